"""Command-line front end: ``floerkit <subcommand> [flags]``.

Exit codes: 0 success, 1 precondition violation (one-line diagnostic on
stderr), 2 numeric non-convergence, 64 usage error (unknown subcommand or
bad flags).  Output is deterministic: identical flags give identical bytes.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import chern, groebner, lefschetz, mumford, repvariety, tables
from .graded import AlgebraError
from .scalars import format_scalar, parse_scalar

__all__ = ["RunConfig", "main", "run", "build_parser", "EXIT_OK", "EXIT_PRECONDITION",
           "EXIT_NONCONVERGENCE", "EXIT_USAGE"]

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_NONCONVERGENCE = 2
EXIT_USAGE = 64

SUBCOMMANDS = ("mumford", "xi", "spectrum", "lefschetz", "repvariety", "grr-check", "quotient", "ahi", "thurston")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    """Parsed flags.  Defaults: T = 2(g+m)+4, tolerance 1e-9, seed 0, alternating lambda signs."""

    subcommand: str
    g: int | None = None
    n: int | None = None
    k: int | None = None
    eps: int = 1
    seed: int = 0
    T: int | None = None
    tolerance: float = 1e-9
    signs: str = "alternating"
    format: str = "json"
    extra: dict = field(default_factory=dict)


@dataclass
class Result:
    record: dict
    rows: list[dict]
    text: str


# ---------------------------------------------------------------------------
# handlers


def _need(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"{cfg.subcommand}: --{name} is required")


def _poly_record(p) -> dict:
    return {"polynomial": p.pretty(), "text": p.to_text(), "degree": p.homogeneous_degree(),
            "num_terms": len(p.terms)}


def _cmd_mumford(cfg: RunConfig) -> Result:
    _need(cfg, "g", "n")
    raw = cfg.extra.get("raw", False)
    f = mumford.mumford_relation(cfg.g, cfg.n, normalized=not raw, expand_gamma=cfg.extra.get("expand_gamma", False))
    m = (cfg.n - 1) // 2
    lead = f.leading_alpha_coeff(cfg.g + m)
    rec = {"g": cfg.g, "n": cfg.n, "m": m, "form": "raw" if raw else "normalized",
           **_poly_record(f), "leading_coeff": format_scalar(lead),
           "paper_ref": "degree-2(g+m) relation f = (g+m)! xi_{g+m,n}, coefficient of alpha^{g+m} equal to 1"}
    return Result(rec, [rec], f.pretty())


def _cmd_xi(cfg: RunConfig) -> Result:
    _need(cfg, "k", "n")
    p = mumford.xi(cfg.k, cfg.n)
    rec = {"k": cfg.k, "n": cfg.n, **_poly_record(p),
           "leading_coeff": format_scalar(p.leading_alpha_coeff(cfg.k)),
           "paper_ref": "(k+1) xi_{k+1} = alpha xi_k + (m-k) beta xi_{k-1} - (gamma/2) xi_{k-2}, xi_0 = 1, xi_1 = alpha"}
    if cfg.extra.get("oracle"):
        rep = mumford.closed_form_oracle(cfg.k, cfg.n, samples=cfg.extra.get("samples", 20), seed=cfg.seed)
        rec["oracle"] = rep.to_json()
    return Result(rec, [rec], p.pretty())


def _cmd_spectrum(cfg: RunConfig) -> Result:
    _need(cfg, "g", "n")
    rep = tables.spectrum(cfg.extra["space"], cfg.g, cfg.n)
    rec = rep.to_json()
    rows = [{"space": rep.space, "g": cfg.g, "n": cfg.n, **e.to_json(), "paper_ref": rep.citation}
            for e in rep.entries]
    text = " ".join(f"{e.value}" + (f"(x{e.alg_mult})" if e.alg_mult != tables.UNKNOWN else "") for e in rep.entries)
    return Result(rec, rows, text)


_WEDGE_TERM = re.compile(r"^(?:(?P<c>[^*]+?)\s*\*\s*)?(?P<mono>e\d+(?:\s*\^\s*e\d+)*)$")


def parse_wedge(text: str, g: int) -> lefschetz.WedgeElement:
    """``"e1^e3 + -1/2 * e2^e4 + 3"`` -> WedgeElement."""
    text = re.sub(r"\s+-\s+", " + -", text.strip())
    out = lefschetz.WedgeElement(g)
    for raw in text.split(" + "):
        raw = raw.strip()
        try:
            out = out + lefschetz.WedgeElement.scalar_unit(g, parse_scalar(raw))
            continue
        except ValueError:
            pass
        sign = 1
        if raw.startswith("-") and not re.match(r"^-\s*[\d(]", raw):
            sign, raw = -1, raw[1:].strip()
        m = _WEDGE_TERM.match(raw)
        if not m:
            raise AlgebraError(f"cannot parse wedge term {raw!r}")
        c = parse_scalar(m.group("c")) if m.group("c") else Fraction(1)
        idx = [int(x) for x in re.findall(r"\d+", m.group("mono"))]
        out = out + lefschetz.WedgeElement.basis(g, *idx).scale(c * sign)
    return out


def _cmd_lefschetz(cfg: RunConfig) -> Result:
    _need(cfg, "g")
    g = cfg.g
    if g < 0:
        raise AlgebraError("g must be nonnegative")
    rows = []
    total = 0
    for k in range(g + 1):
        dim = lefschetz.primitive_dimension(g, k)
        basis = len(lefschetz.primitive_basis(g, k))
        total += (g - k + 1) * dim
        rows.append({"g": g, "k": k, "primitive_dim": dim, "basis_size": basis, "copies": g - k + 1,
                     "paper_ref": "primitive part = kernel of contraction with omega, dim C(2g,k) - C(2g,k-2)"})
    rec = {"g": g, "primitive": rows, "weighted_total": total, "exterior_dim": 4 ** g,
           "paper_ref": "Lambda*W = sum_k Lambda_0^k W (x) C[gamma_omega]/(gamma_omega^{g-k+1})"}
    text = "\n".join(f"k={r['k']} dim={r['primitive_dim']} x{r['copies']}" for r in rows)
    text += f"\nweighted total {total} = 4^{g} = {4 ** g}"
    element = cfg.extra.get("element")
    if element:
        x = parse_wedge(element, g)
        dec = lefschetz.decompose(x)
        comps = [{"k": k, "j": j, "component": p.to_lists()} for k, j, p in dec.nonzero()]
        rec["decomposition"] = comps
        rec["reconstructs"] = dec.reconstruct() == x
        text += "\n" + "\n".join(f"gamma^{c['j']} ^ p[k={c['k']}] = {lefschetz.WedgeElement(g, {tuple(i): parse_scalar(v) for i, v in c['component']})}"
                                 for c in comps)
    return Result(rec, rows, text)


def _cmd_repvariety(cfg: RunConfig) -> Result:
    _need(cfg, "g", "n")
    x, rep = repvariety.solve(cfg.g, cfg.n, cfg.eps, cfg.seed, max_restarts=cfg.extra.get("restarts", 100))
    rec = rep.to_json()
    rec["residual"] = float(f"{rep.residual:.3e}")
    rec["paper_ref"] = "dim R_{g,n} = 6g + 2n - 6 (quotient by conjugation, n odd)"
    rows = [{k: v for k, v in rec.items() if k != "traces"}]
    text = (f"residual {rec['residual']:.3e}, raw nullity {rep.raw_nullity}, "
            f"quotient dim {rep.quotient_dim} (expected {repvariety.expected_dimension(cfg.g, cfg.n)})")
    return Result(rec, rows, text)


def _cmd_grr_check(cfg: RunConfig) -> Result:
    _need(cfg, "g")
    m = cfg.extra.get("m")
    if m is None:
        if cfg.n is None:
            raise UsageError("grr-check: give --m or --n")
        if cfg.n % 2 == 0 or cfg.n < 1:
            raise chern.SeriesError("n must be a positive odd integer")
        m = (cfg.n - 1) // 2
    rep = chern.r1_closed_form_check(cfg.g, m, cfg.T, samples=cfg.extra.get("samples", 20), seed=cfg.seed)
    rec = rep.to_json()
    rec["max_residual"] = float(f"{rep.max_residual:.3e}")
    rec["tolerance"] = cfg.tolerance
    rec["passed"] = rep.max_residual < cfg.tolerance
    rec["paper_ref"] = ("c_t(R^1)/[J_g] = (1+beta t^2)^{(m-1)/2} (t/2)^g "
                        "((1-t s)/(1+t s))^{(2 alpha beta + gamma)/(4 s^3)} exp(-t gamma/(2 beta)), s = sqrt(-beta), "
                        "compared modulo gamma^{g+1}")
    text = f"max relative residual {rec['max_residual']:.3e} (rank {rep.rank}) {'ok' if rec['passed'] else 'FAILED'}"
    result = Result(rec, [rec], text)
    if not rec["passed"]:
        raise _NumericFailure(result)
    return result


class _NumericFailure(Exception):
    def __init__(self, result: Result):
        super().__init__("residual above tolerance")
        self.result = result


def _signs(cfg: RunConfig):
    s = cfg.signs
    if s in ("alternating", "positive", "negative"):
        return s
    return [int(v) for v in s.split(",")]


def _cmd_quotient(cfg: RunConfig) -> Result:
    path = cfg.extra.get("ideal")
    model = cfg.extra.get("model")
    order = cfg.extra.get("order", "grevlex")
    if path:
        with open(path, encoding="utf-8") as fh:
            ideal = groebner.parse_ideal_file(fh.read(), cfg.n, order)
        source = path
    else:
        _need(cfg, "g", "n")
        builder = {"top": groebner.top_eigenspace_ideal, "q": groebner.q_model_ideal}[model or "q"]
        ideal = builder(cfg.g, cfg.n, _signs(cfg)).with_order(order)
        source = f"model:{model or 'q'}"
    qb = groebner.groebner(ideal)
    rec = {"source": source, "order": order, "dimension": qb.dimension,
           "groebner_basis": [p.to_text() for p in qb.basis],
           "paper_ref": "quotient C[alpha,beta,gamma,delta]/I and the spectrum of multiplication by alpha"}
    if qb.finite:
        rec["standard_monomials"] = [qb.monomial_text(m) for m in qb.standard_monomials]
        report = groebner.alpha_spectrum(ideal)
        rec["spectrum"] = [e.to_json() for e in report.entries]
        rows = [{"dimension": qb.dimension, **e.to_json(), "paper_ref": rec["paper_ref"]} for e in report.entries]
        text = f"dimension {qb.dimension}; alpha spectrum " + ", ".join(
            f"{format_scalar(e.value) if e.exact else e.value} (alg {e.alg_mult}, geo {e.geo_mult})" for e in report.entries)
    else:
        rec["standard_monomials"] = None
        rec["spectrum"] = None
        rows = [{"dimension": "infinite", "paper_ref": rec["paper_ref"]}]
        text = "quotient is infinite-dimensional"
    return Result(rec, rows, text)


def _cmd_ahi(cfg: RunConfig) -> Result:
    _need(cfg, "n")
    dims = tables.ahi_product(cfg.n)
    cite = tables.citation("AHI")
    rows = [{"n": cfg.n, "f_degree": i, "dimension": d, "paper_ref": cite} for i, d in dims.items()]
    rec = {"n": cfg.n, "dimensions": {str(i): d for i, d in dims.items()}, "total": sum(dims.values()),
           "paper_ref": cite}
    text = " ".join(f"{i}:{d}" for i, d in dims.items())
    return Result(rec, rows, text)


def _cmd_thurston(cfg: RunConfig) -> Result:
    surfaces = cfg.extra.get("surfaces") or []
    if not surfaces and cfg.g is not None and cfg.n is not None:
        surfaces = [(cfg.g, cfg.n)]
    rep = tables.thurston_bound(surfaces)
    rec = rep.to_json()
    rec["surfaces"] = [{"g": g, "n": n, "complexity": 2 * g + n} for g, n in surfaces]
    rows = [{"g": s["g"], "n": s["n"], "complexity": s["complexity"], "bound": rep.bound,
             "paper_ref": rep.citation} for s in rec["surfaces"]]
    text = f"bound {rep.bound}: AHI vanishes for |i| > {rep.bound}, nonzero at +-{rep.bound}"
    return Result(rec, rows, text)


HANDLERS: dict[str, Callable[[RunConfig], Result]] = {
    "mumford": _cmd_mumford,
    "xi": _cmd_xi,
    "spectrum": _cmd_spectrum,
    "lefschetz": _cmd_lefschetz,
    "repvariety": _cmd_repvariety,
    "grr-check": _cmd_grr_check,
    "quotient": _cmd_quotient,
    "ahi": _cmd_ahi,
    "thurston": _cmd_thurston,
}


# ---------------------------------------------------------------------------
# parsing and output


def _surface(text: str) -> tuple[int, int]:
    try:
        g, n = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected G,N but got {text!r}") from None
    return g, n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--g", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--eps", type=int, choices=(1, -1), default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--T", type=int, dest="T")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--signs", default="alternating",
                        help="lambda sign convention: alternating, positive, negative, or comma list of +-1")
    common.add_argument("--format", choices=("json", "tsv", "text"), default="json")

    parser = _Parser(prog="floerkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = sub.add_parser("mumford", parents=[common], help="Mumford relation f = (g+m)! xi_{g+m}")
    p.add_argument("--raw", action="store_true", help="emit xi_{g+m} instead of the normalized f")
    p.add_argument("--expand-gamma", action="store_true", help="rewrite gamma as sum psi_j psi_{j+g}")
    p = sub.add_parser("xi", parents=[common], help="one polynomial xi_{k,n}")
    p.add_argument("--oracle", action="store_true", help="also compare partial sums with the closed form")
    p.add_argument("--samples", type=int, default=20)
    p = sub.add_parser("spectrum", parents=[common], help="surface-operator spectrum table")
    p.add_argument("--space", choices=tables.SPACES, required=True)
    p = sub.add_parser("lefschetz", parents=[common], help="primitive decomposition data")
    p.add_argument("--element", help='wedge element, e.g. "e1^e3 + -1/2 * e2"')
    p = sub.add_parser("repvariety", parents=[common], help="solve the relator equations numerically")
    p.add_argument("--restarts", type=int, default=100)
    p = sub.add_parser("grr-check", parents=[common], help="R^1 pipeline vs closed form")
    p.add_argument("--m", type=int)
    p.add_argument("--samples", type=int, default=20)
    p = sub.add_parser("quotient", parents=[common], help="Groebner basis, dimension and alpha spectrum")
    p.add_argument("--ideal", help="ideal file: one generator per line, # comments")
    p.add_argument("--model", choices=("q", "top"), help="model ideal when no file is given (default q)")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    sub.add_parser("ahi", parents=[common], help="graded dimensions of AHI of the n-strand product link")
    p = sub.add_parser("thurston", parents=[common], help="minimal 2g+n bound")
    p.add_argument("--surface", type=_surface, action="append", dest="surfaces", metavar="G,N")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    base = {f: getattr(ns, f) for f in ("g", "n", "k", "eps", "seed", "T", "tolerance", "signs", "format")}
    extra = {k: v for k, v in vars(ns).items() if k not in base and k != "subcommand"}
    return RunConfig(subcommand=ns.subcommand, extra=extra, **base)


def _scalar_cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return "" if v is None else str(v)


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.record, sort_keys=True, indent=2, ensure_ascii=False)
    if fmt == "tsv":
        header: list[str] = []
        for row in result.rows:
            for k in row:
                if k not in header:
                    header.append(k)
        lines = ["\t".join(header)]
        lines += ["\t".join(_scalar_cell(row.get(k)) for k in header) for row in result.rows]
        return "\n".join(lines)
    return result.text


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute a parsed configuration; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    handler = HANDLERS.get(cfg.subcommand)
    if handler is None:
        print(f"floerkit: unknown subcommand {cfg.subcommand!r}", file=err)
        return EXIT_USAGE
    try:
        result = handler(cfg)
    except UsageError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except _NumericFailure as exc:
        print(render(exc.result, cfg.format), file=out)
        print(f"floerkit {cfg.subcommand}: residual above tolerance", file=err)
        return EXIT_NONCONVERGENCE
    except repvariety.NonConvergenceError as exc:
        print(f"floerkit {cfg.subcommand}: {exc}", file=err)
        return EXIT_NONCONVERGENCE
    except (ValueError, KeyError, OSError) as exc:
        msg = str(exc).strip("'\"") or type(exc).__name__
        print(f"floerkit {cfg.subcommand}: {msg}", file=err)
        return EXIT_PRECONDITION
    print(render(result, cfg.format), file=out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help()
        return EXIT_OK if argv else EXIT_USAGE
    if argv[0] not in SUBCOMMANDS:
        print(f"floerkit: unknown subcommand {argv[0]!r}; choose from {', '.join(SUBCOMMANDS)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    return run(_config(ns))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
