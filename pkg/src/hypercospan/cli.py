"""Command-line interface.

Every subcommand is deterministic; errors print one line to stderr and exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cospan as cs
from .algebra import part_algebra, psi, verify_equivalence
from .errors import HypercospanError
from .hypergraph import SUITES
from .instances import CospanCategory, FinRel, FinRelMorphism, LinRel, LinRelMorphism
from .labels import declare_labels
from .report import Report
from .terms import Signature, decompose, eval_term, parse_term, pretty, typecheck

INSTANCES = ("cospan", "linrel-copy", "linrel-add", "finrel")
DEFAULT_LABELS = {"cospan": "a,b", "linrel-copy": "r", "linrel-add": "r", "finrel": "a,b"}


class UsageError(HypercospanError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _write(path: str | None, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_cospan(path: str) -> cs.Cospan:
    return cs.from_dict(_read_json(path))


def _labels(text: str) -> list[str]:
    labels = [l.strip() for l in text.split(",") if l.strip()]
    if not labels:
        raise UsageError("--labels must name at least one label")
    return labels


def _carriers(text: str | None, labels) -> dict[str, int]:
    sizes = {label: 2 for label in labels}
    if text:
        for item in text.split(","):
            label, _, size = item.partition("=")
            try:
                sizes[label.strip()] = int(size)
            except ValueError:
                raise UsageError(f"bad carrier spec {item!r}; expected label=size") from None
    if any(v < 1 for v in sizes.values()):
        raise UsageError("carrier sizes must be positive")
    return sizes


def make_instance(name: str, labels, carriers: str | None = None):
    declare_labels(labels)
    if name == "cospan":
        return CospanCategory(labels)
    if name.startswith("linrel-"):
        if len(labels) != 1:
            raise UsageError(f"{name} has a single label, got {','.join(labels)}")
        return LinRel(name.split("-", 1)[1], labels[0])
    if name == "finrel":
        return FinRel(_carriers(carriers, labels))
    raise UsageError(f"unknown instance {name!r}")


def _load_morphism(instance: str, d):
    if instance == "cospan":
        return cs.from_dict(d)
    if instance.startswith("linrel-"):
        return LinRelMorphism.from_dict(d)
    return FinRelMorphism.from_dict(d)


def _dump_morphism(m) -> str:
    if isinstance(m, cs.Cospan):
        return cs.to_json(m)
    return m.to_json()


def _signature(path: str | None) -> Signature | None:
    if path is None:
        return None
    sig = Signature.from_dict(_read_json(path))
    declare_labels(sig.labels)
    return sig


# -- subcommands ---------------------------------------------------------------


def cmd_parse(args) -> int:
    sig = _signature(args.sig)
    term = parse_term(_read(args.input), sig)
    typecheck(term, sig)
    boxes = {}
    if args.boxes:
        boxes = {k: cs.from_dict(v) for k, v in _read_json(args.boxes).items()}
    H = CospanCategory(sig.labels if sig else None)
    _write(args.out, cs.to_json(eval_term(term, H, boxes)))
    return 0


def cmd_compose(args) -> int:
    _write(args.out, cs.to_json(cs.compose(_load_cospan(args.a), _load_cospan(args.b))))
    return 0


def cmd_tensor(args) -> int:
    _write(args.out, cs.to_json(cs.tensor(_load_cospan(args.a), _load_cospan(args.b))))
    return 0


def cmd_eq(args) -> int:
    same = cs.equal(_load_cospan(args.a), _load_cospan(args.b))
    print("equal" if same else "not equal")
    return 0 if same else 1


def cmd_decompose(args) -> int:
    _write(args.out, pretty(decompose(_load_cospan(args.input))))
    return 0


def cmd_eval(args) -> int:
    sig = _signature(args.sig)
    labels = list(sig.labels) if sig else _labels(DEFAULT_LABELS[args.instance])
    H = make_instance(args.instance, labels, args.carriers)
    term = parse_term(_read(args.input), sig)
    typecheck(term, sig)
    boxes = {}
    if args.boxes:
        boxes = {k: _load_morphism(args.instance, v) for k, v in _read_json(args.boxes).items()}
    _write(args.out, _dump_morphism(eval_term(term, H, boxes)))
    return 0


def _emit(report: Report, header: str) -> int:
    print(header)
    for line in report.lines():
        print(line)
    failed = len(report.failures())
    print(f"# {len(report.lines()) - failed} passed, {failed} failed")
    return 0 if report.ok else 1


def cmd_check(args) -> int:
    labels = _labels(args.labels or DEFAULT_LABELS[args.instance])
    H = make_instance(args.instance, labels, args.carriers)
    report = SUITES[args.suite](H, labels, args.seed, args.cases)
    return _emit(report, f"# suite {args.suite} instance {args.instance} seed {args.seed}")


def cmd_verify_equiv(args) -> int:
    labels = _labels(args.labels or DEFAULT_LABELS[args.instance])
    H = make_instance(args.instance, labels, args.carriers)
    A = part_algebra(labels) if args.instance == "cospan" else psi(H)
    report = verify_equivalence(A, H, args.samples, args.seed)
    return _emit(report, f"# verify-equiv instance {args.instance} seed {args.seed}")


def to_dot(c: cs.Cospan) -> str:
    """Apex nodes as points, boundary ports as boxes, one edge per leg entry."""
    c = cs.canonicalize(c)
    out = ["graph cospan {", "  rankdir=LR;"]
    out.append("  subgraph dom { rank=source;")
    out += [f'    d{i} [shape=box, label="{l}"];' for i, l in enumerate(c.dom)]
    out.append("  }")
    out += [f'  n{k} [shape=circle, label="{l}"];' for k, l in enumerate(c.apex)]
    out.append("  subgraph cod { rank=sink;")
    out += [f'    c{j} [shape=box, label="{l}"];' for j, l in enumerate(c.cod)]
    out.append("  }")
    out += [f"  d{i} -- n{k};" for i, k in enumerate(c.left)]
    out += [f"  n{k} -- c{j};" for j, k in enumerate(c.right)]
    out.append("}")
    return "\n".join(out)


def cmd_dot(args) -> int:
    _write(args.out, to_dot(_load_cospan(args.input)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercospan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="evaluate a term to its canonical cospan")
    s.add_argument("--sig")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--boxes")
    s.add_argument("--out")
    s.set_defaults(func=cmd_parse)

    for name, func in (("compose", cmd_compose), ("tensor", cmd_tensor)):
        s = sub.add_parser(name, help=f"{name} two cospans")
        s.add_argument("a")
        s.add_argument("b")
        s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("eq", help="exit 0 if two cospans are equal, 1 if not")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("decompose", help="write a term that evaluates to a cospan")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("eval", help="evaluate a term in an instance")
    s.add_argument("--instance", choices=INSTANCES, required=True)
    s.add_argument("--sig")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--boxes")
    s.add_argument("--carriers", help="finrel carrier sizes, e.g. a=2,b=3")
    s.add_argument("--out")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", help="run an axiom suite")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--instance", choices=INSTANCES, required=True)
    s.add_argument("--labels")
    s.add_argument("--carriers")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=200)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify-equiv", help="check the algebra/category equivalence")
    s.add_argument("--instance", choices=INSTANCES, required=True)
    s.add_argument("--labels")
    s.add_argument("--carriers")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_equiv)

    s = sub.add_parser("dot", help="render a cospan as Graphviz DOT")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HypercospanError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
