"""Command-line entry point: presentation documents, command dispatch and reports."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .qlc_presentation import PresentationError, QlcPresentation, format_element, split, validate

FIXTURES = ("weyl", "tensor2", "sym2", "ug-nonabelian", "heisenberg-unital", "poly1", "dualnumbers", "laurent",
            "sym2-commutative")

_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


class DocumentError(Exception):
    """A presentation document failed to parse; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


# ---------------------------------------------------------------------------
# documents


def parse_rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError(where, f"expected an integer or a \"p/q\" string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise DocumentError(where, "zero denominator") from None
    raise DocumentError(where, f"expected an integer or a \"p/q\" string, got {x!r}")


def parse_document(doc: Any) -> QlcPresentation:
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    for key in ("name", "mode", "generators", "relations"):
        if key not in doc:
            raise DocumentError("$", f"missing field {key!r}")
    name, mode = doc["name"], doc["mode"]
    if mode not in ("associative", "commutative"):
        raise DocumentError("mode", f"must be 'associative' or 'commutative', got {mode!r}")
    gens = []
    if not isinstance(doc["generators"], list):
        raise DocumentError("generators", "must be a list of [symbol, degree] pairs")
    for i, g in enumerate(doc["generators"]):
        where = f"generators[{i}]"
        if not (isinstance(g, list) and len(g) == 2 and isinstance(g[0], str) and isinstance(g[1], int)
                and not isinstance(g[1], bool)):
            raise DocumentError(where, "must be a [symbol, degree] pair")
        if g[1] < 0:
            raise DocumentError(where, "degrees must be non-negative")
        if "*" in g[0] or not g[0]:
            raise DocumentError(where, "symbols must be non-empty and must not contain '*'")
        gens.append((g[0], g[1]))
    symbols = [g for g, _ in gens]
    if len(set(symbols)) != len(symbols):
        raise DocumentError("generators", "symbols must be distinct")
    rels = []
    if not isinstance(doc["relations"], list):
        raise DocumentError("relations", "must be a list")
    for i, r in enumerate(doc["relations"]):
        where = f"relations[{i}]"
        if not isinstance(r, dict):
            raise DocumentError(where, "must be an object with constant/linear/quadratic")
        unknown = set(r) - {"constant", "linear", "quadratic"}
        if unknown:
            raise DocumentError(where, f"unknown fields {sorted(unknown)}")
        e: dict = {}
        c = parse_rational(r.get("constant", 0), f"{where}.constant")
        if c:
            e[()] = c
        for sym, v in (r.get("linear") or {}).items():
            if sym not in symbols:
                raise DocumentError(f"{where}.linear[{sym!r}]", "undeclared generator")
            q = parse_rational(v, f"{where}.linear[{sym!r}]")
            if q:
                e[(sym,)] = e.get((sym,), 0) + q
        for key, v in (r.get("quadratic") or {}).items():
            parts = key.split("*")
            if len(parts) != 2:
                raise DocumentError(f"{where}.quadratic[{key!r}]", "keys must look like 'a*b'")
            for sym in parts:
                if sym not in symbols:
                    raise DocumentError(f"{where}.quadratic[{key!r}]", f"undeclared generator {sym!r}")
            q = parse_rational(v, f"{where}.quadratic[{key!r}]")
            if q:
                e[tuple(parts)] = e.get(tuple(parts), 0) + q
        e = {w: x for w, x in e.items() if x}
        if not e:
            raise DocumentError(where, "relation is zero")
        rels.append(e)
    try:
        return QlcPresentation(gens, rels, name=name, mode=mode)
    except PresentationError as exc:
        raise DocumentError("relations", str(exc)) from None


def load_fixture(name: str) -> QlcPresentation:
    if name not in FIXTURES:
        raise DocumentError("$", f"unknown fixture {name!r}; bundled: {', '.join(FIXTURES)}")
    text = resources.files("curvedkoszul").joinpath("fixtures", f"{name}.json").read_text()
    return parse_document(json.loads(text))


def load_document(ref: str) -> QlcPresentation:
    """A path to a JSON document, or the name of a bundled fixture."""
    path = Path(ref)
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise DocumentError("$", f"cannot read {ref}: {exc}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
        return parse_document(doc)
    return load_fixture(ref)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    command: str
    document: str
    parameters: dict
    checks: list = field(default_factory=list)  # dicts with id, status and payload
    tables: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def add(self, cid: str, passed: bool | None, **payload) -> None:
        status = "skipped" if passed is None else ("pass" if passed else "fail")
        self.checks.append({"id": cid, "status": status, **payload})

    def add_checks(self, prefix: str, report) -> None:
        for c in report.checks:
            self.add(f"{prefix}{c.id}", c.passed, **_jsonable(c.detail))

    def to_json(self, timing: bool = False) -> str:
        out = {"command": self.command, "document": self.document, "parameters": self.parameters,
               "checks": self.checks, "tables": self.tables, "ok": self.ok}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return json.dumps(_jsonable(out), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command} {self.document} {json.dumps(self.parameters, sort_keys=True)}"]
        for name, table in self.tables.items():
            lines.append(f"[{name}]")
            lines.extend(_format_table(table))
        width = max((len(c["id"]) for c in self.checks), default=0)
        for c in self.checks:
            extra = {k: v for k, v in c.items() if k not in ("id", "status")}
            tail = f"  {json.dumps(_jsonable(extra), sort_keys=True)}" if extra else ""
            lines.append(f"{c['id']:<{width}}  {c['status']}{tail}")
        lines.append(f"result: {'pass' if self.ok else 'fail'}  ({self.wall_time:.2f}s)")
        return "\n".join(lines) + "\n"


def _format_table(table: dict) -> list:
    header = table["columns"]
    rows = [[str(x) for x in r] for r in table["rows"]]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    return [fmt.format(*header)] + [fmt.format(*r) for r in rows]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return "*".join(str(p) for p in k) if all(isinstance(p, str) for p in k) else repr(k)
    return str(k)


def _table(columns, rows) -> dict:
    return {"columns": list(columns), "rows": [list(r) for r in rows]}


# ---------------------------------------------------------------------------
# commands


def _need_commutative(p: QlcPresentation, cmd: str) -> None:
    if p.mode != "commutative":
        raise UsageError(f"'{cmd}' needs a commutative presentation (mode={p.mode})")


def _assoc(p: QlcPresentation) -> QlcPresentation:
    return p.associative_envelope()


class UsageError(Exception):
    pass


def cmd_validate(p, args, rep: Report) -> None:
    v = validate(_assoc(p))
    rep.add("minimality", v.minimality, **({"witness": format_element(v.minimality_witness)}
                                          if v.minimality_witness else {}))
    rep.add("weak_consistency", v.weak_consistency, **({"witness": format_element(v.weak_witness)}
                                                      if v.weak_witness else {}))


def cmd_split(p, args, rep: Report) -> None:
    s = split(_assoc(p))
    rows = [(format_element(b), format_element(ph) or "0", str(th)) for b, ph, th in zip(s.qr_basis, s.phi, s.theta)]
    rep.tables["split"] = _table(["qR basis", "phi", "theta"], rows)
    rep.add("split", True, dim_qr=s.dim_qr)


def cmd_dual(p, args, rep: Report) -> None:
    from .koszul_dual import CurvedCoalgebraTrunc, StabilityViolation
    s = split(_assoc(p))
    try:
        c = CurvedCoalgebraTrunc(s, args.max_weight)
    except StabilityViolation as exc:
        rep.add("stability", False, weight=exc.weight, witness=repr(exc.witness))
        return
    rep.tables["dual"] = _table(["weight", "dim"], list(enumerate(c.dims())))
    rep.add("stability", True)


def cmd_axioms(p, args, rep: Report) -> None:
    from .koszul_dual import CurvedCoalgebraTrunc, dual_curved_algebra, verify_axioms, verify_curved_algebra
    s = split(_assoc(p))
    c = CurvedCoalgebraTrunc(s, args.max_weight)
    rep.add_checks("", verify_axioms(c))
    rep.add_checks("dual_algebra.", verify_curved_algebra(dual_curved_algebra(c)))


def cmd_koszul_cert(p, args, rep: Report) -> None:
    from .koszul_dual import koszulness_certificate
    cert = koszulness_certificate(split(_assoc(p)), args.max_weight)
    rep.tables["certificate"] = _table(["weight", "homology", "expected_h0", "passed"],
                                       [(r["weight"], json.dumps(_jsonable(r["homology"]), sort_keys=True),
                                         r["expected_h0"], r["passed"]) for r in cert.rows])
    rep.add("koszul_certificate", cert.ok, **({"failed_weight": cert.failed_weight} if not cert.ok else {}))


def cmd_cobar(p, args, rep: Report) -> None:
    from .cobar_bar import BarTrunc, CobarTrunc, bar_identities, cobar_identities, gkappa_quasi_iso, kappa, verify_mc
    from .koszul_dual import CurvedCoalgebraTrunc, dual_curved_algebra
    s = split(_assoc(p))
    N = args.max_weight
    c = CurvedCoalgebraTrunc(s, N)
    om = CobarTrunc(c, N)
    rep.add_checks("cobar.", cobar_identities(om))
    rep.add_checks("bar.", bar_identities(BarTrunc(dual_curved_algebra(c), N)))
    rep.add_checks("", verify_mc(kappa(s, W=N, N=N, coalgebra=c)))
    q = gkappa_quasi_iso(s, N)
    rep.tables["cobar_homology"] = _table(["degree", "dim"], sorted(q.homology.items()))
    rep.add("g_kappa_quasi_iso", q.ok, algebra_dim=q.algebra_dim, certified=q.certified)


def cmd_resolve(p, args, rep: Report) -> None:
    from .koszul_complex import resolution_check
    r = resolution_check(split(_assoc(p)), args.truncate)
    rep.tables["resolution"] = _table(["degree", "dim"], sorted(r.homology.items()))
    rep.add("resolution", r.ok, H0=r.homology.get(0, 0), algebra_dim=r.algebra_dim, certified=r.certified)


def cmd_hh(p, args, rep: Report) -> None:
    from .koszul_complex import KoszulHochschildComplex, hochschild
    s = split(_assoc(p))
    r = hochschild(s, args.truncate, method=args.method)
    rep.tables["hochschild"] = _table(["n", "stable", f"dim H(F<={args.truncate - 2})", f"dim H(F<={args.truncate})"],
                                      [(n, st, lo, hi) for n, st, (lo, hi) in r.rows()])
    if args.method == "koszul":
        rep.add_checks("", KoszulHochschildComplex(s, args.truncate).checks())
    rep.add("hochschild", True, stable={str(k): v for k, v in sorted(r.stable.items())})


def cmd_hc(p, args, rep: Report) -> None:
    from .cyclic import (KINDS, bicomplex, chain_map_checks, cocommutator_subspace, coker_form, ker_form,
                         row_exactness, _ker_one_minus_T)
    from .koszul_dual import CurvedCoalgebraTrunc, dual_curved_algebra
    kind = args.kind.replace("-", "_")
    W = args.bounds
    a = dual_curved_algebra(CurvedCoalgebraTrunc(split(_assoc(p)), W))
    b = bicomplex(kind, a, W)
    lo, hi = args.n_min, args.n_max
    dims = b.hc(lo, hi)
    label = "HC^n" if kind.startswith("dual") else "HC_n"
    rep.tables["hc"] = _table(["n", label], sorted(dims.items()))
    rep.add_checks("", chain_map_checks(a, min(args.arity, 5)))
    if kind == "plus":
        alt = coker_form(b, lo, hi)
        rep.add("coker_form_agrees", alt == dims, coker=alt)
    if kind == "minus":
        alt = ker_form(b, lo, hi)
        rep.add("ker_form_agrees", alt == dims, kernel=alt)
        rep.add("cocommutator_equals_kernel", cocommutator_subspace(b) == _ker_one_minus_T(b))
    if kind.endswith("per"):
        ex = row_exactness(b)
        rep.add(ex.id, ex.passed, **_jsonable(ex.detail))
    rep.parameters["note"] = ("product total complex realized as the direct sum total complex of the weightwise "
                              "finite dual" if kind.startswith("dual") else "direct sum total complex")


def cmd_ft_compare(p, args, rep: Report) -> None:
    from .cyclic import ft_compare
    D = args.max_weight if args.max_weight is not None else args.n_max + 1
    rep.parameters["max_weight"] = D
    r = ft_compare(split(_assoc(p)), D, args.n_max)
    rep.tables["ft_compare"] = _table(["n", "H_n(Tot X+)", "H_n(R_nat)", "HC^-n_minus((qA)!)", "HC^{-1-n}_plus"],
                                      [(n, a, b, c, r.dual_plus[n]) for n, a, b, c in r.rows()])
    rep.add("dims_agree", r.dims_agree)
    rep.add("structural_isomorphism", r.structural.ok,
            **({"witness": repr(r.structural.witness)} if not r.structural.ok else {}))
    rep.add_checks("x_plus.", r.x_checks)
    rep.add("les", r.les.passed)
    rep.add("remark_isomorphism", r.dual_plus == r.x_plus)


def cmd_lie(p, args, rep: Report) -> None:
    from .commutative_lie import LieCobarTrunc, c_resolution_check, koszul_dual_lie
    _need_commutative(p, "lie")
    s = split(p)
    W = args.max_weight
    kd = koszul_dual_lie(s, W)
    rep.tables["lie_dual"] = _table(["weight", "dim"], [(n, d) for n, d in enumerate(kd.dims(), start=1)])
    rep.add_checks("", kd.lie.verify_axioms())
    rep.add_checks("", kd.lemma_conditions())
    rep.add("j_compatible", kd.well_defined.passed)
    rep.add_checks("lie_cobar.", LieCobarTrunc(kd.lie, W).identities())
    r = c_resolution_check(s, W)
    rep.tables["lie_cobar_homology"] = _table(["degree", "dim"], sorted(r.homology.items()))
    rep.tables["weight_slice"] = _table(["weight", "dim deg 1", "dim deg 0", "rank d2"], r.weight_slice)
    rep.add("c_resolution", r.ok, algebra_dim=r.algebra_dim, note=r.proxy_note)


def cmd_uc_compare(p, args, rep: Report) -> None:
    from .commutative_lie import uc_comparison
    _need_commutative(p, "uc-compare")
    r = uc_comparison(split(p), args.n_max)
    rep.tables["uc_compare"] = _table(["n", "assoc dual", "co-PBW count"],
                                      [(n, a, b) for n, (a, b) in enumerate(zip(r.assoc_dims, r.co_pbw))])
    rep.tables["lie_dual"] = _table(["weight", "dim"], [(n, d) for n, d in enumerate(r.lie_dims, start=1)])
    rep.add("co_pbw_dimension_identity", r.assoc_dims == r.co_pbw)
    for n, ok in sorted(r.image_equals_annihilator.items()):
        rep.add(f"j_surjective_weight_{n}", ok)
    rep.add_checks("", r.lemma)
    rep.add_checks("", r.lie_axioms)
    rep.add("j_compatible", r.well_defined.passed, note=r.proxy_note)


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "split": cmd_split, "dual": cmd_dual, "axioms": cmd_axioms,
    "koszul-cert": cmd_koszul_cert, "cobar": cmd_cobar, "resolve": cmd_resolve, "hh": cmd_hh, "hc": cmd_hc,
    "ft-compare": cmd_ft_compare, "lie": cmd_lie, "uc-compare": cmd_uc_compare,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvedkoszul", description="Curved Koszul duality computations over Q.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("document", help=f"JSON presentation file or bundled fixture ({', '.join(FIXTURES)})")
        sp.add_argument("--out", help="write the JSON report to this file")
        sp.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
        return sp

    weight_flag = dict(type=int, default=4, help="weight bound W")
    add("validate", "check the two conditions on the relation space")
    add("split", "show qR with the linear and constant parts")
    add("dual", "dimensions of the dual coalgebra").add_argument("--max-weight", **weight_flag)
    add("axioms", "curved coalgebra axioms").add_argument("--max-weight", **weight_flag)
    add("koszul-cert", "weight-bounded Koszulness certificate").add_argument("--max-weight", **weight_flag)
    add("cobar", "cobar/bar identities and g_kappa").add_argument("--max-weight", **weight_flag)
    add("resolve", "homology of the twisted bimodule complex").add_argument(
        "--truncate", type=int, default=4, help="filtration bound N")
    hh = add("hh", "Hochschild homology by the two-truncation protocol")
    hh.add_argument("--truncate", type=int, default=6, help="filtration bound N; stable ranks compare N-2 with N")
    hh.add_argument("--method", choices=["koszul", "bar"], default="koszul",
                    help="small Koszul-based complex or normalized Hochschild complex")
    hc = add("hc", "cyclic (co)homology of the dual curved algebra")
    hc.add_argument("--kind", required=True, choices=["per", "plus", "minus", "dual-per", "dual-plus", "dual-minus"])
    hc.add_argument("--bounds", type=int, default=4, help="weight bound")
    hc.add_argument("--n-min", type=int, default=None, help="lowest total degree (default -5 for dual kinds, else 0)")
    hc.add_argument("--n-max", type=int, default=None, help="highest total degree (default 0 for dual kinds, else 5)")
    hc.add_argument("--arity", type=int, default=4, help="arity bound for the chain-map identities (at most 5)")
    ft = add("ft-compare", "reduced cyclic homology through the cobar model against the dual side")
    ft.add_argument("--n-max", type=int, default=5, help="highest degree compared")
    ft.add_argument("--max-weight", type=int, default=None, help="weight bound (default n-max + 1)")
    add("lie", "Koszul dual Lie coalgebra and Lie cobar resolution").add_argument("--max-weight", **weight_flag)
    add("uc-compare", "associative against Lie dual").add_argument(
        "--n-max", type=int, default=4, help="highest weight compared (at most 4)")
    return ap


def _check_flags(args) -> None:
    for name in ("max_weight", "truncate", "bounds", "n_max"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    if args.command in ("lie", "uc-compare"):
        limit = args.max_weight if args.command == "lie" else args.n_max
        if limit > 4:
            raise UsageError("the commutative/Lie commands are capped at weight 4")
    if args.command == "hh" and args.truncate < 2:
        raise UsageError("--truncate must be at least 2")
    if args.command == "hc":
        dual = args.kind.startswith("dual")
        if args.n_min is None:
            args.n_min = -5 if dual else 0
        if args.n_max is None:
            args.n_max = 0 if dual else 5
        if args.n_min > args.n_max:
            raise UsageError("--n-min exceeds --n-max")


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_flags(args)
        p = load_document(args.document)
    except (DocumentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "document", "out", "timing")}
    rep = Report(args.command, args.document, params)
    t0 = time.perf_counter()
    try:
        COMMANDS[args.command](p, args, rep)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PresentationError as exc:
        rep.add("presentation", False, error=str(exc))
    rep.wall_time = time.perf_counter() - t0
    stdout.write(rep.to_text())
    if args.out:
        Path(args.out).write_text(rep.to_json(timing=args.timing))
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
