"""Command-line front end: enumeration, verification sweeps, diagram
construction, and JSON/SVG emission.  All output is deterministic; errors
go to stderr as machine-readable JSON with a nonzero exit status."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import atf, farey, handles, lens, markov, svg, verify
from .errors import LenscalcError, PreconditionError

DEPTH_CAP = 16


def _dump(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _emit_error(code: str, message: str) -> None:
    print(
        json.dumps({"error": code, "message": message}, separators=(",", ":")),
        file=sys.stderr,
    )


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let slope arguments like -8/5 parse as positionals, not options
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    def error(self, message):
        _emit_error("usage", message)
        raise SystemExit(2)


def _check_depth(depth: int) -> int:
    if depth < 0 or depth > DEPTH_CAP:
        raise PreconditionError(f"depth must be between 0 and {DEPTH_CAP}")
    return depth


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path} is not valid JSON: {exc}") from exc


def _cmd_markov_tree(args) -> int:
    depth = _check_depth(args.depth)
    out = [
        {"p": list(t.entries()), "word": word}
        for t, word in markov.enumerate_tree(depth)
    ]
    _dump(out)
    return 0


def _cmd_markov_derive_q(args) -> int:
    t = markov.MarkovTriple(args.p1, args.p2, args.p3)
    q = markov.derive_q(t)
    _dump(
        {
            "p": list(t.entries()),
            "q": list(q.entries()),
            "bezout": [q.bezout_x, q.bezout_y],
        }
    )
    return 0


def _cmd_markov_verify(args) -> int:
    depth = _check_depth(args.depth)
    triples = [t for t, _ in markov.enumerate_tree(depth)]
    conditions = {"1": True, "2": True, "3_some": True, "3_all": True, "4": True}
    for t in triples:
        rep = markov.verify_q(t, markov.derive_q(t))
        conditions["1"] &= rep.cond1
        conditions["2"] &= rep.cond2
        conditions["3_some"] &= rep.cond3_some
        conditions["3_all"] &= rep.cond3_all
        conditions["4"] &= rep.cond4
    ok = conditions["1"] and conditions["2"] and conditions["3_some"] and conditions["4"]
    _dump(
        {
            "depth": depth,
            "triples": len(triples),
            "conditions": conditions,
            "pass": ok,
        }
    )
    return 0 if ok else 1


def _cmd_farey_path(args) -> int:
    src = farey.Slope.parse(args.src)
    dst = farey.Slope.parse(args.dst)
    path = farey.minimal_path(src, dst)
    _dump({"slopes": [[str(s.num), str(s.den)] for s in path]})
    return 0


def _cmd_farey_classify(args) -> int:
    path = farey.DecoratedPath.from_json_obj(_load_json(args.path))
    _dump({"classification": farey.classify(path).value})
    return 0


def _cmd_lens_surgery(args) -> int:
    p, q = args.knot
    r, s = args.ambient
    knot = lens.TorusKnot(p, q, lens.LensSpace(r, s))
    _dump(lens.nonloose_surgery_result(knot).to_json_obj())
    return 0


def _triple_and_q(p1: int, p2: int, p3: int):
    t = markov.MarkovTriple(p1, p2, p3)
    return t, markov.derive_q(t)


def _cmd_handle_build_x(args) -> int:
    t, q = _triple_and_q(args.p1, args.p2, args.p3)
    d = handles.build_X(t, q)
    if args.json:
        _dump(d.to_json_obj())
    else:
        print(f"diagram for {t} with q={q.entries()}")
        for i, c in enumerate(d.curves, start=1):
            print(f"  gamma{i}: {c}")
        print(f"  handles: one 0-, one 1-, {len(d.curves)} 2-, {d.n3} 3-, {d.n4} 4-handles")
    return 0


def _cmd_handle_recognize(args) -> int:
    d = handles.HorizontalDiagram.from_json_obj(_load_json(args.diagram))
    ok, x = handles.recognize_cp2(d)
    _dump({"cp2": ok, "x": list(x)})
    return 0


def _cmd_handle_mutate(args) -> int:
    d = handles.HorizontalDiagram.from_json_obj(_load_json(args.diagram))
    slot = handles.Slot(args.slot)
    _dump(handles.slide_mutation(d, slot).to_json_obj())
    return 0


def _cmd_atf_build(args) -> int:
    t = markov.MarkovTriple(args.p1, args.p2, args.p3)
    d = atf.atf_for_markov(t)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg.render_svg(d))
    _dump(d.to_json_obj())
    return 0


def _cmd_atf_move(args) -> int:
    d = atf.AtfDiagram.from_json_obj(_load_json(args.diagram))
    if args.transfer is not None:
        out = atf.transfer_cut(d, args.transfer)
    else:
        index, param = args.slide
        node = d.nodes[index]
        factor = Fraction(param)
        if factor <= 0:
            raise PreconditionError("slide parameter must be positive")
        target = atf._add(
            node.cut_end,
            atf._scale(atf._sub(node.position, node.cut_end), factor),
        )
        out = atf.nodal_slide(d, index, target)
    _dump(out.to_json_obj())
    return 0


def _cmd_verify_all(args) -> int:
    depth = _check_depth(args.depth)
    results = verify.run_all(depth)
    ok = True
    for r in results:
        status = "ok" if r.passed else "FAIL"
        print(f"{status} {r.number} - {r.description} ({r.detail})")
        ok = ok and r.passed
    print("all criteria passed" if ok else "some criteria FAILED")
    return 0 if ok else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="lenscalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_markov = sub.add_parser("markov", help="Markov triples and q-triples")
    markov_sub = p_markov.add_subparsers(dest="subcommand", required=True)
    p = markov_sub.add_parser("tree", help="enumerate the Markov tree")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=_cmd_markov_tree)
    p = markov_sub.add_parser("derive-q", help="companion surgery coefficients")
    p.add_argument("p1", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("p3", type=int)
    p.set_defaults(func=_cmd_markov_derive_q)
    p = markov_sub.add_parser("verify", help="sweep the q-triple conditions")
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=_cmd_markov_verify)

    p_farey = sub.add_parser("farey", help="Farey paths and classification")
    farey_sub = p_farey.add_subparsers(dest="subcommand", required=True)
    p = farey_sub.add_parser("path", help="minimal clockwise path between slopes")
    p.add_argument("src")
    p.add_argument("dst")
    p.set_defaults(func=_cmd_farey_path)
    p = farey_sub.add_parser("classify", help="classify a decorated path file")
    p.add_argument("path")
    p.set_defaults(func=_cmd_farey_classify)

    p_lens = sub.add_parser("lens", help="lens-space surgery")
    lens_sub = p_lens.add_subparsers(dest="subcommand", required=True)
    p = lens_sub.add_parser("surgery", help="torus-framed surgery splitting")
    p.add_argument("--knot", type=int, nargs=2, required=True, metavar=("P", "Q"))
    p.add_argument("--ambient", type=int, nargs=2, required=True, metavar=("R", "S"))
    p.set_defaults(func=_cmd_lens_surgery)

    p_handle = sub.add_parser("handle", help="horizontal handle diagrams")
    handle_sub = p_handle.add_subparsers(dest="subcommand", required=True)
    p = handle_sub.add_parser("build-x", help="three-curve diagram for a triple")
    p.add_argument("p1", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("p3", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_handle_build_x)
    p = handle_sub.add_parser("recognize", help="CP^2 recognition test")
    p.add_argument("diagram")
    p.set_defaults(func=_cmd_handle_recognize)
    p = handle_sub.add_parser("mutate", help="mutation handle slide")
    p.add_argument("diagram")
    p.add_argument("--slot", choices=["first", "second"], required=True)
    p.set_defaults(func=_cmd_handle_mutate)

    p_atf = sub.add_parser("atf", help="almost toric base diagrams")
    atf_sub = p_atf.add_subparsers(dest="subcommand", required=True)
    p = atf_sub.add_parser("build", help="diagram for a Markov triple")
    p.add_argument("p1", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("p3", type=int)
    p.add_argument("--svg", metavar="OUT")
    p.set_defaults(func=_cmd_atf_build)
    p = atf_sub.add_parser("move", help="apply a transfer or a slide")
    p.add_argument("diagram")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--transfer", type=int, metavar="N")
    group.add_argument(
        "--slide",
        nargs=2,
        metavar=("N", "X/Y"),
        help="slide node N so its cut length scales by the rational X/Y",
    )
    p.set_defaults(func=_cmd_atf_move)

    p_verify = sub.add_parser("verify", help="acceptance sweeps")
    verify_sub = p_verify.add_subparsers(dest="subcommand", required=True)
    p = verify_sub.add_parser("all", help="run the full acceptance sweep")
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=_cmd_verify_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "slide", None) is not None:
            args.slide = (int(args.slide[0]), args.slide[1])
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except LenscalcError as exc:
        _emit_error(exc.code, str(exc))
        return 2
    except (ValueError, IndexError) as exc:
        _emit_error("bad-input", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
