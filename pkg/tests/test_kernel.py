"""Cross-check of the compiled kernel against the pure-Python one."""

import random

import pytest

from plconj import _kernel_py
from plconj.plmap import from_partition
from plconj.randgen import random_element

try:
    from plconj import _kernel_c
except ImportError:
    _kernel_c = None

needs_ext = pytest.mark.skipif(_kernel_c is None, reason="compiled kernel unavailable")


def _random_flat(rng):
    return random_element(rng, max_cells=5, denom_exp=7).flat


@needs_ext
def test_dyadic_primitives_agree():
    rng = random.Random(5)
    for _ in range(500):
        a = (rng.randrange(-99, 100), rng.randrange(0, 10))
        b = (rng.randrange(-99, 100), rng.randrange(0, 10))
        assert _kernel_c.dy_canon(*a) == _kernel_py.dy_canon(*a)
        ac, bc = _kernel_py.dy_canon(*a), _kernel_py.dy_canon(*b)
        assert _kernel_c.dy_add(*ac, *bc) == _kernel_py.dy_add(*ac, *bc)
        assert _kernel_c.dy_sub(*ac, *bc) == _kernel_py.dy_sub(*ac, *bc)
        assert _kernel_c.dy_mul(*ac, *bc) == _kernel_py.dy_mul(*ac, *bc)
        assert _kernel_c.dy_cmp(*ac, *bc) == _kernel_py.dy_cmp(*ac, *bc)


@needs_ext
def test_node_operations_agree():
    rng = random.Random(6)
    for _ in range(60):
        f = _random_flat(rng)
        g = _random_flat(rng)
        assert _kernel_c.invert_nodes(f) == _kernel_py.invert_nodes(f)
        assert _kernel_c.compose_nodes(f, g) == _kernel_py.compose_nodes(f, g)
        k = rng.randrange(-5, 6)
        assert _kernel_c.power_nodes(f, k) == _kernel_py.power_nodes(f, k)
        tn, te = f[4], f[5]
        assert _kernel_c.eval_dyadic(f, tn, te) == _kernel_py.eval_dyadic(f, tn, te)
        assert _kernel_c.eval_dyadic_inv(f, f[6], f[7]) == _kernel_py.eval_dyadic_inv(f, f[6], f[7])


@needs_ext
def test_canon_agrees_on_redundant_nodes():
    # a node list with a deliberately collinear interior node
    f = from_partition([0, "1/2", 1], [0, "1/4", 1]).flat
    redundant = f[:4] + [1, 2, 1, 3] + f[4:]  # (1/4, 1/8) lies on the first segment
    assert _kernel_c.canon_nodes(redundant) == _kernel_py.canon_nodes(redundant) == f
