"""Command-line front end: ``hallforge <objects|compute|verify> --config file.json``.

Exit codes: 0 success, 1 usage/config/parse error, 2 cap exceeded,
3 verification failure.  JSON goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import suites
from .arith import Scalar, is_prime
from .derived import DerivedGrading, FStar, Reflection, reflection_pair
from .double import DoubleAlgebra, DoubleElement, Report
from .errors import CapExceeded, ConfigError, HallforgeError, ParseError
from .hall import HallAlgebra, HallElement, TensorElement
from .quivercat import Category, IsoClass, Quiver
from .serialize import class_ref, value_json

log = logging.getLogger("hallforge")

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_FAIL = 0, 1, 2, 3
SUITES = ("hopf", "pairing", "double", "lemma3", "prop3", "fstar", "k0")


@dataclass
class SessionConfig:
    vertices: int
    arrows: list[tuple[int, int]]
    q: int
    vertex_cap: int = 4
    total_cap: int = 6
    hom_budget: int = 2**20
    antipode_order: str = "ascending"
    cache_dir: str | None = None
    verbose: bool = False
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, obj: dict) -> SessionConfig:
        try:
            vertices = int(obj["vertices"])
            arrows = [(int(s), int(t)) for s, t in obj.get("arrows", [])]
            q = int(obj["q"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad config: {exc}") from exc
        caps = obj.get("caps", {})
        cfg = cls(
            vertices=vertices,
            arrows=arrows,
            q=q,
            vertex_cap=int(caps.get("vertex", 4)),
            total_cap=int(caps.get("total", 6)),
            hom_budget=int(caps.get("hom", 2**20)),
            antipode_order=obj.get("antipode_order", "ascending"),
            cache_dir=obj.get("cache_dir"),
            verbose=bool(obj.get("verbose", False)),
        )
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str) -> SessionConfig:
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_json(obj)

    def validate(self) -> None:
        if not is_prime(self.q):
            raise ConfigError(f"q={self.q} is not prime")
        if min(self.vertex_cap, self.total_cap, self.hom_budget) < 1:
            raise ConfigError("caps must be positive")
        if self.antipode_order not in ("ascending", "descending"):
            raise ConfigError(f"unknown antipode order {self.antipode_order!r}")
        Quiver(self.vertices, tuple(self.arrows))


class Session:
    def __init__(self, cfg: SessionConfig, cache_dir: str | None = None):
        self.cfg = cfg
        self.quiver = Quiver(cfg.vertices, tuple(cfg.arrows))
        self.cat = Category(
            self.quiver,
            cfg.q,
            vertex_cap=cfg.vertex_cap,
            total_cap=cfg.total_cap,
            hom_budget=cfg.hom_budget,
            cache_dir=cache_dir or cfg.cache_dir,
        )
        self.H = HallAlgebra(self.cat, cfg.antipode_order)
        self.D = DoubleAlgebra(self.H)
        self._fstar: dict[int, FStar] = {}

    def fstar(self, vertex: int) -> FStar:
        if vertex not in self._fstar:
            fs, _ = reflection_pair(self.cat, vertex, antipode_order=self.cfg.antipode_order)
            self._fstar[vertex] = fs
        return self._fstar[vertex]


# -- expressions ---------------------------------------------------------------------


def tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse(text: str):
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while pos < len(tokens) and tokens[pos] != ")":
                items.append(read())
            if pos >= len(tokens):
                raise ParseError("missing ')'")
            pos += 1
            return items
        if tok == ")":
            raise ParseError("unexpected ')'")
        return tok

    tree = read()
    if pos != len(tokens):
        raise ParseError(f"trailing input after expression: {' '.join(tokens[pos:])}")
    return tree


class Evaluator:
    def __init__(self, session: Session, reflect_vertex: int | None = None):
        self.s = session
        self.reflect_vertex = reflect_vertex

    def scalar(self, tok) -> Scalar:
        q = self.s.cfg.q
        if tok == "v":
            return Scalar(0, 1, q)
        try:
            return Scalar(Fraction(tok), 0, q)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"not a scalar: {tok!r}") from exc

    def ints(self, items) -> tuple[int, ...]:
        try:
            return tuple(int(x) for x in items)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"expected integers, got {items!r}") from exc

    def vector(self, args) -> tuple[int, ...]:
        vec = self.ints(args[0]) if len(args) == 1 and isinstance(args[0], list) else self.ints(args)
        if len(vec) != self.s.cat.n:
            raise ParseError(f"expected {self.s.cat.n} entries, got {len(vec)}")
        return vec

    def iso_class(self, args) -> IsoClass:
        cat = self.s.cat
        if len(args) == 1 and isinstance(args[0], str) and args[0][0] == "S":
            name = args[0]
            if name == "S":
                if cat.n != 1:
                    raise ParseError("'S' is only defined for a one-vertex quiver; use S1, S2, ...")
                return cat.simple_class(0)
            try:
                v = int(name[1:]) - 1
            except ValueError as exc:
                raise ParseError(f"unknown class name {name!r}") from exc
            if not 0 <= v < cat.n:
                raise ParseError(f"no vertex {name[1:]}")
            return cat.simple_class(v)
        index = 0
        if args and isinstance(args[-1], str) and args[-1].startswith("#"):
            index = int(args[-1][1:])
            args = args[:-1]
        dim = self.vector(args)
        classes = cat.enumerate_classes(dim)
        if not 0 <= index < len(classes):
            raise ParseError(f"dimension {dim} has {len(classes)} classes, no index {index}")
        return classes[index]

    def eval(self, node):
        if isinstance(node, str):
            return self.scalar(node)
        if not node:
            raise ParseError("empty form")
        head, args = node[0], node[1:]
        if not isinstance(head, str):
            raise ParseError("form must start with an operator name")
        H, D = self.s.H, self.s.D
        if head == "cls":
            return H.cls(self.iso_class(args))
        if head == "k":
            return H.k(self.vector(args))
        vals = [self.eval(a) for a in args]
        if head in ("hmul", "dmul", "mul"):
            if len(vals) < 2:
                raise ParseError(f"{head} needs at least two arguments")
            out = vals[0]
            for v in vals[1:]:
                if head == "dmul" and not (isinstance(out, DoubleElement) and isinstance(v, DoubleElement)):
                    raise ParseError("dmul expects double elements (use inj1 / inj2)")
                if head == "hmul" and isinstance(out, DoubleElement):
                    raise ParseError("hmul expects Hall or tensor elements")
                out = out * v
            return out
        if head == "tensor":
            a, b = self._hall(vals, 2, head)
            return H.tensor_of(a, b)
        if head == "inj1":
            (x,) = self._hall(vals, 1, head)
            return D.left(x)
        if head == "inj2":
            (x,) = self._hall(vals, 1, head)
            return D.right(x)
        if head == "coprod":
            (x,) = self._hall(vals, 1, head)
            return H.coproduct(x)
        if head == "antipode":
            (x,) = self._hall(vals, 1, head)
            return H.antipode(x)
        if head == "invantipode":
            (x,) = self._hall(vals, 1, head)
            return H.inverse_antipode(x)
        if head == "counit":
            (x,) = self._hall(vals, 1, head)
            return H.counit(x)
        if head == "pair":
            if len(vals) == 2 and all(isinstance(v, TensorElement) for v in vals):
                return H.pairing_tensor(*vals)
            a, b = self._hall(vals, 2, head)
            return H.pairing(a, b)
        if head == "fstar":
            if self.reflect_vertex is None:
                raise ParseError("fstar needs --reflect-vertex")
            if len(vals) != 1:
                raise ParseError("fstar takes one argument")
            x = vals[0]
            fs = self.s.fstar(self.reflect_vertex)
            if isinstance(x, DoubleElement):
                return fs(x)
            if isinstance(x, TensorElement):
                return fs.on_tensor(x)
            raise ParseError("fstar expects a double or tensor element")
        if head in ("add", "sub"):
            if len(vals) < 2:
                raise ParseError(f"{head} needs at least two arguments")
            out = vals[0]
            for v in vals[1:]:
                if type(v) is not type(out):
                    raise ParseError(f"{head}: operands of different kinds")
                out = out + v if head == "add" else out - v
            return out
        if head == "scale":
            if len(vals) != 2 or not isinstance(vals[0], Scalar):
                raise ParseError("scale takes a scalar and an element")
            x = vals[1]
            return x * vals[0] if isinstance(x, Scalar) else x.scale(vals[0])
        raise ParseError(f"unknown operator {head!r}")

    @staticmethod
    def _hall(vals, n, head):
        if len(vals) != n or not all(isinstance(v, HallElement) for v in vals):
            raise ParseError(f"{head} expects {n} Hall element argument(s)")
        return vals


# -- commands ----------------------------------------------------------------------


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_objects(session: Session, dim) -> int:
    cat = session.cat
    if dim is None:
        raise ConfigError("objects needs --dim")
    if len(dim) != cat.n:
        raise ConfigError(f"--dim needs {cat.n} entries")
    rows = []
    for c in cat.enumerate_classes(dim):
        rows.append(
            {
                "class": class_ref(c),
                "aut": cat.aut_order(c),
                "indecomposable": cat.is_indecomposable(c),
                "decomposition": [class_ref(x) for x in cat.decompose(c)],
            }
        )
    _emit({"dim": list(dim), "count": len(rows), "classes": rows})
    return EXIT_OK


def cmd_compute(session: Session, expression: str, reflect_vertex: int | None) -> int:
    result = Evaluator(session, reflect_vertex).eval(parse(expression))
    _emit(value_json(result))
    return EXIT_OK


def run_suite(session: Session, suite: str, total: int, reflect_vertex: int | None) -> list[Report]:
    H, D, cat = session.H, session.D, session.cat
    if suite == "hopf":
        return suites.hopf(H, total)
    if suite == "pairing":
        return suites.pairing(H, total)
    if suite == "double":
        return suites.double(D, total)
    if suite == "lemma3":
        return suites.middle_sums(D, total)
    if suite == "prop3":
        grading = DerivedGrading(Reflection(cat, reflect_vertex)) if reflect_vertex is not None else None
        return suites.defining_relations(D, total, grading)
    if suite == "fstar":
        if reflect_vertex is None:
            raise ConfigError("the fstar suite needs --reflect-vertex")
        return suites.fstar(cat, reflect_vertex, total, antipode_order=session.cfg.antipode_order)
    if suite == "k0":
        return suites.k0(cat, total)
    raise ConfigError(f"unknown suite {suite!r}")


def cmd_verify(session: Session, suite: str, total: int, reflect_vertex: int | None) -> int:
    reports = run_suite(session, suite, total, reflect_vertex)
    failed = 0
    for r in reports:
        rec = r.to_json()
        if r.passed:
            rec.pop("lhs", None)
            rec.pop("rhs", None)
        else:
            failed += 1
        _emit(rec)
    log.info("%s: %d instances, %d failed", suite, len(reports), failed)
    return EXIT_FAIL if failed else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hallforge", description="Exact Hall algebra computations for quiver representations.")
    p.add_argument("command", choices=("objects", "compute", "verify"))
    p.add_argument("expression", nargs="?", help="s-expression for the compute command")
    p.add_argument("--config", required=True, help="session config (JSON)")
    p.add_argument("--dim", help="dimension vector, e.g. 1,1")
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--total", type=int, default=3, help="total-dimension bound for suites (default 3)")
    p.add_argument("--reflect-vertex", type=int)
    p.add_argument("--cache-dir")
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; suites run serially")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        cfg = SessionConfig.load(args.config)
        if args.jobs != 1:
            log.warning("--jobs %d: suites run serially in this version", args.jobs)
        dim = None
        if args.dim is not None:
            try:
                dim = tuple(int(x) for x in args.dim.split(","))
            except ValueError as exc:
                raise ConfigError(f"bad --dim {args.dim!r}") from exc
        session = Session(cfg, args.cache_dir)
        if args.command == "objects":
            return cmd_objects(session, dim)
        if args.command == "compute":
            if not args.expression:
                raise ConfigError("compute needs an expression")
            return cmd_compute(session, args.expression, args.reflect_vertex)
        if not args.suite:
            raise ConfigError("verify needs --suite")
        return cmd_verify(session, args.suite, args.total, args.reflect_vertex)
    except CapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except (ConfigError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except HallforgeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
