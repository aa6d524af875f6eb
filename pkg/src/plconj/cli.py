"""Command-line front end: parse elements, dispatch to the solvers, and
emit deterministic JSON documents with machine-checkable witnesses.

Exit codes: 0 for a positive decision (or plain success), 1 for a
certified negative decision (document carries the obstruction), 2 for
malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import central, conj, randgen, reach, simconj
from .exactnum import Dyadic
from .plmap import PLMap, Interval, compose, fixed_set, power

COMMANDS = (
    "eval",
    "compose",
    "invert",
    "power",
    "fixedset",
    "reach",
    "conjugate",
    "simconj",
    "roots",
    "centralizer",
    "intersect",
    "reduce2",
    "verify",
    "gen",
    "plot",
)

GENERATOR_NODES = {
    "x0": [("0", "0"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1")],
    "x1": [("0", "0"), ("1/2", "1/2"), ("3/4", "5/8"), ("7/8", "3/4"), ("1", "1")],
}


class InputError(Exception):
    pass


def _parse_nodes(nodes) -> PLMap:
    if not isinstance(nodes, list):
        raise InputError("element nodes must be a list of [x, y] pairs")
    pairs = []
    for i, item in enumerate(nodes):
        if not (isinstance(item, list) and len(item) == 2):
            raise InputError(f"node {i}: expected a [x, y] pair")
        try:
            pairs.append((Dyadic.parse(str(item[0])), Dyadic.parse(str(item[1]))))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"node {i}: {exc}") from exc
    try:
        return PLMap(pairs)
    except ValueError as exc:
        raise InputError(f"invalid element: {exc}") from exc


def _generator(n: int) -> PLMap:
    x0 = _parse_nodes([list(p) for p in GENERATOR_NODES["x0"]])
    if n == 0:
        return x0
    x1 = _parse_nodes([list(p) for p in GENERATOR_NODES["x1"]])
    if n == 1:
        return x1
    shift = power(x0, n - 1)
    return compose(shift.inverse(), compose(x1, shift))


def _parse_word(word: str) -> PLMap:
    result = PLMap.identity()
    for pos, token in enumerate(word.split()):
        base, _, exp = token.partition("^")
        if not base.startswith("x") or not base[1:].isdigit():
            raise InputError(f"word token {pos}: expected x<N> or x<N>^<k>, got {token!r}")
        try:
            k = int(exp) if exp else 1
        except ValueError as exc:
            raise InputError(f"word token {pos}: bad exponent in {token!r}") from exc
        result = compose(result, power(_generator(int(base[1:])), k))
    return result


def parse_element(doc) -> PLMap:
    """Element from a node list, {"nodes": ...} or {"word": ...} document."""
    if isinstance(doc, str):
        return _parse_word(doc)
    if isinstance(doc, list):
        return _parse_nodes(doc)
    if isinstance(doc, dict):
        if "nodes" in doc:
            return _parse_nodes(doc["nodes"])
        if "word" in doc:
            return _parse_word(doc["word"])
    raise InputError("element must be a node list, a word, or a {nodes|word} object")


def serialize_element(f: PLMap):
    return [[str(x), str(y)] for x, y in f.nodes]


def serialize_fixed_set(fs):
    out = []
    for c in fs.components:
        if c.is_interval():
            out.append({"type": "interval", "lo": str(c.lo_pt), "hi": str(c.hi_pt)})
        else:
            out.append({"type": "point", "at": str(c.at)})
    return {"components": out}


def serialize_descriptor(desc: central.CentralizerDesc):
    factors = []
    for f in desc.factors:
        entry = {
            "interval": [str(f.interval.lo), str(f.interval.hi)],
            "kind": f.kind.value,
        }
        if f.generator is not None:
            entry["generator"] = serialize_element(f.generator)
        factors.append(entry)
    return {
        "partition": [str(p) for p in desc.partition],
        "factors": factors,
        "m": desc.m,
        "n": desc.n,
    }


def parse_descriptor(doc) -> central.CentralizerDesc:
    try:
        partition = tuple(Dyadic.parse(p) for p in doc["partition"])
        factors = []
        for f in doc["factors"]:
            interval = Interval(Dyadic.parse(f["interval"][0]), Dyadic.parse(f["interval"][1]))
            kind = central.FactorKind(f["kind"])
            gen = parse_element(f["generator"]) if kind is central.FactorKind.CYCLIC else None
            factors.append(central.CentralizerFactor(interval, kind, gen))
        return central.CentralizerDesc(partition, tuple(factors))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid descriptor: {exc}") from exc


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}: {exc}") from exc


def _load_doc(args):
    if args.infile is None:
        raise InputError("this command needs --in (file or - for stdin)")
    try:
        text = sys.stdin.read() if args.infile == "-" else open(args.infile).read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON at position {exc.pos}: {exc.msg}") from exc


def _field(doc, name):
    if not isinstance(doc, dict) or name not in doc:
        raise InputError(f"input document needs field {name!r}")
    return doc[name]


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _no(obstruction) -> int:
    _emit({"answer": "no", "obstruction": obstruction})
    return 1


# -- command handlers --------------------------------------------------


def _cmd_eval(args):
    f = parse_element(_load_doc(args))
    t = _parse_rational(args.args[0]) if args.args else None
    if t is None:
        raise InputError("eval needs a point argument")
    try:
        _emit({"value": str(f.eval_fraction(t))})
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return 0


def _cmd_compose(args):
    doc = _load_doc(args)
    f = parse_element(_field(doc, "f"))
    g = parse_element(_field(doc, "g"))
    _emit({"result": serialize_element(compose(f, g))})
    return 0


def _cmd_invert(args):
    doc = _load_doc(args)
    f = parse_element(doc.get("f", doc) if isinstance(doc, dict) else doc)
    _emit({"result": serialize_element(f.inverse())})
    return 0


def _cmd_power(args):
    doc = _load_doc(args)
    f = parse_element(doc.get("f", doc) if isinstance(doc, dict) else doc)
    if not args.args:
        raise InputError("power needs an integer exponent argument")
    try:
        n = int(args.args[0])
    except ValueError as exc:
        raise InputError(f"bad exponent {args.args[0]!r}") from exc
    _emit({"result": serialize_element(power(f, n))})
    return 0


def _cmd_fixedset(args):
    f = parse_element(_load_doc(args))
    _emit(serialize_fixed_set(fixed_set(f)))
    return 0


def _cmd_reach(args):
    if len(args.args) != 2:
        raise InputError("reach needs two rationals a b")
    a, b = map(_parse_rational, args.args)
    if not (0 < a < 1 and 0 < b < 1):
        raise InputError("points must lie strictly inside the unit interval")
    g = reach.build_tuple_map([a], [b])
    if g is None:
        return _no({"kind": "exponent congruence unsolvable", "a": str(a), "b": str(b)})
    _emit({"answer": "yes", "witness": serialize_element(g)})
    return 0


def _cmd_conjugate(args):
    doc = _load_doc(args)
    y = parse_element(_field(doc, "y"))
    z = parse_element(_field(doc, "z"))
    witness, obstruction = conj.conjugate_decide(y, z)
    if witness is None:
        return _no({"kind": obstruction.kind.value, "detail": obstruction.detail})
    _emit({"answer": "yes", "witness": serialize_element(witness.conjugator)})
    return 0


def _cmd_simconj(args):
    doc = _load_doc(args)
    xs = [parse_element(e) for e in _field(doc, "xs")]
    ys = [parse_element(e) for e in _field(doc, "ys")]
    if len(xs) != len(ys) or not xs:
        raise InputError("xs and ys must be nonempty tuples of equal length")
    g = simconj.simultaneous_conjugate(xs, ys)
    if g is None:
        return _no({"kind": "no simultaneous conjugator"})
    _emit({"answer": "yes", "witness": serialize_element(g)})
    return 0


def _cmd_roots(args):
    f = parse_element(_load_doc(args))
    if f.is_identity():
        raise InputError("the identity has roots of every degree")
    roots = central.all_roots(f)
    _emit({"roots": [{"degree": n, "root": serialize_element(h)} for n, h in roots]})
    return 0


def _cmd_centralizer(args):
    f = parse_element(_load_doc(args))
    _emit(serialize_descriptor(central.centralizer(f)))
    return 0


def _cmd_intersect(args):
    doc = _load_doc(args)
    xs = [parse_element(e) for e in _field(doc, "xs")]
    if not xs:
        raise InputError("intersect needs at least one element")
    _emit(serialize_descriptor(central.intersect_centralizers(xs)))
    return 0


def _cmd_reduce2(args):
    desc = parse_descriptor(_load_doc(args))
    w1, w2 = central.reduce_to_two(desc)
    _emit({"w1": serialize_element(w1), "w2": serialize_element(w2)})
    return 0


def _cmd_verify(args):
    doc = _load_doc(args)
    y = parse_element(_field(doc, "y"))
    z = parse_element(_field(doc, "z"))
    g = parse_element(_field(doc, "g"))
    if conj.verify(y, z, g):
        _emit({"verified": True})
        return 0
    _emit({"verified": False})
    return 1


def _cmd_gen(args):
    if args.seed is None:
        raise InputError("gen needs --seed")
    rng = random.Random(args.seed)
    kind = args.args[0] if args.args else "element"
    count = int(args.args[1]) if len(args.args) > 1 else 1
    vectors = []
    for _ in range(count):
        if kind == "element":
            vectors.append({"element": serialize_element(randgen.random_element(rng))})
        elif kind == "below":
            vectors.append({"element": serialize_element(randgen.random_below(rng))})
        elif kind == "pair":
            y, z, g = randgen.random_conjugate_pair(rng)
            vectors.append(
                {
                    "y": serialize_element(y),
                    "z": serialize_element(z),
                    "conjugator": serialize_element(g),
                }
            )
        elif kind == "tuple":
            xs, ys, g = randgen.random_tuple_instance(rng, 2)
            vectors.append(
                {
                    "xs": [serialize_element(x) for x in xs],
                    "ys": [serialize_element(y) for y in ys],
                    "conjugator": serialize_element(g),
                }
            )
        else:
            raise InputError(f"unknown vector kind {kind!r}")
    _emit({"seed": args.seed, "kind": kind, "vectors": vectors})
    return 0


def _cmd_plot(args):
    f = parse_element(_load_doc(args))
    lines = [f"{'x':>12} {'f(x)':>12}"]
    for x, y in f.nodes:
        lines.append(f"{str(x):>12} {str(y):>12}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


_HANDLERS = {
    "eval": _cmd_eval,
    "compose": _cmd_compose,
    "invert": _cmd_invert,
    "power": _cmd_power,
    "fixedset": _cmd_fixedset,
    "reach": _cmd_reach,
    "conjugate": _cmd_conjugate,
    "simconj": _cmd_simconj,
    "roots": _cmd_roots,
    "centralizer": _cmd_centralizer,
    "intersect": _cmd_intersect,
    "reduce2": _cmd_reduce2,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "plot": _cmd_plot,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plconj",
        description="Exact conjugacy, root and centralizer solvers for dyadic "
        "piecewise-linear homeomorphisms of the unit interval.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("args", nargs="*", help="positional arguments of the command")
    parser.add_argument("--in", dest="infile", default=None, help="input document (file or -)")
    parser.add_argument("--json", action="store_true", help="JSON output (the default)")
    parser.add_argument("--seed", type=int, default=None, help="seed for the gen command")
    return parser


def run(argv) -> int:
    args = _build_parser().parse_intermixed_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except InputError as exc:
        sys.stderr.write(f"plconj: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"plconj: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
