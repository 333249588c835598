"""Command line interface.

Exit codes: 0 success (for ``verify``: every check passed), 1 a check failed,
2 usage or input error.
"""

import argparse
import json
import sys

from . import __version__
from .config import ConfigError, JobConfig, build_realization, load_config
from .expr import Dot, EvalError, Num, ParseError, PlaneWave, Pow, Prod, Sum, evaluate, parse, to_text
from .hopf import apply_antipode, coproduct_of, format_tensor
from .integrals import jacobian_measure
from .kernels import D_map, K_inverse, K_map, antipode_S, flow_P
from .linalg import fit_combination
from .poly import Poly, dot
from .realizations import InconsistentRealization, catalog, catalog_names, get_realization
from .star import dual_realization, star_polynomials
from .suites import SUITE_NAMES, run_suite

__all__ = ["main", "build_parser", "invariant_form"]


class UsageError(Exception):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class Result:
    """One output line: a name, a printed value and whether it is the zero series."""

    def __init__(self, name, value, residual_zero=None, expected_zero=True):
        self.name = name
        self.value = value
        self.residual_zero = residual_zero
        self.expected_zero = expected_zero

    @classmethod
    def of_poly(cls, name, p, text=None):
        return cls(name, text if text is not None else str(p), p.is_zero())

    @classmethod
    def of_check(cls, check):
        return cls(check.name, check.value(), check.residual_zero, check.expected_zero)

    @property
    def passed(self):
        return self.residual_zero == self.expected_zero

    def as_dict(self):
        out = {"name": self.name, "residual_zero": bool(self.residual_zero), "value": self.value}
        if not self.expected_zero:
            out["expected_zero"] = False
        return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, help="spacetime dimension n (2..6)")
    common.add_argument("--order", type=int, help="truncation order N in a (0..4)")
    common.add_argument("--realization", help="catalog name: " + ", ".join(catalog_names()))
    common.add_argument("--config", help="YAML job config")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="kappalab", description="Exact series toolkit for kappa-Minkowski realizations.")
    parser.add_argument("--version", action="version", version=f"kappalab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("realizations", parents=[common], help="list the realization catalog")
    p.add_argument("action", choices=("list",))
    p = sub.add_parser("star", parents=[common], help="star product of two expressions")
    p.add_argument("f")
    p.add_argument("g")
    sub.add_parser("kernel", parents=[common], help="print K, K inverse, D, S and P")
    p = sub.add_parser("coproduct", parents=[common], help="coproduct of a function of d")
    p.add_argument("op", help="expression in d and a, or Z, Zinv, box, dirac<mu>")
    p = sub.add_parser("antipode", parents=[common], help="antipode of a function of d")
    p.add_argument("op", help="expression in d and a, or Z, Zinv, box, dirac<mu>")
    sub.add_parser("jacobian", parents=[common], help="Jacobian measure of the star integral")
    sub.add_parser("dual", parents=[common], help="the dual realization")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    return parser


def _job(args):
    cfg = load_config(args.config) if args.config else JobConfig()
    explicit = cfg.realization is not None
    if args.dim is not None:
        cfg.n = args.dim
    if args.order is not None:
        cfg.order = args.order
    if args.realization is not None:
        cfg.realization = args.realization
        explicit = True
    cfg.validate()
    return cfg, explicit


def _realization(cfg):
    return build_realization(cfg.realization, cfg.n, cfg.order)


def _parse_input(text, cfg):
    try:
        return evaluate(parse(text), cfg.n, cfg.order)
    except ParseError as exc:
        raise UsageError(str(exc), exc.pos) from None
    except EvalError as exc:
        raise UsageError(str(exc)) from None


def _named_op(text, r):
    ops = r.derived
    if text == "Z":
        return ops.Z_poly
    if text == "Zinv":
        return ops.Zinv_poly
    if text == "box":
        return ops.box_poly
    if text.startswith("dirac") and text[5:].isdigit():
        mu = int(text[5:])
        if mu >= r.n:
            raise UsageError(f"{text} is out of range for dimension {r.n}")
        return ops.dirac_poly[mu]
    return None


def _derivative_op(text, r, cfg):
    named = _named_op(text, r)
    if named is not None:
        return named
    p = _parse_input(text, cfg)
    if isinstance(p, PlaneWave):
        raise UsageError("expected a function of d")
    for g in ("x", "k", "q", "w", "v"):
        if p.has_group(g):
            raise UsageError("the operator must depend on d and a only")
    return p


def invariant_form(p, n, order):
    """Rewrite a scalar series in a and k through (a.k), (a.a), (k.k) when possible."""
    L = p.layout
    kmax = max((L.group_degree(m, "k") for m in p.terms), default=0)
    basis, labels = [], []
    for i in range(order + 1):
        for j in range((order - i) // 2 + 1):
            for l in range((kmax - i) // 2 + 1):
                a = Poly.vector(L, order, "a")
                k = Poly.vector(L, order, "k")
                term = dot(a, k) ** i * dot(a, a) ** j * dot(k, k) ** l
                basis.append(term)
                labels.append((i, j, l))
    coeffs = fit_combination(p, basis)
    if coeffs is None:
        return None
    items = []
    for (i, j, l), c in sorted(zip(labels, coeffs), key=lambda t: (t[0][0] + 2 * t[0][1], t[0])):
        if c.is_zero():
            continue
        factors = []
        for name, power in (("a.k", i), ("a.a", j), ("k.k", l)):
            if power:
                left, right = name.split(".")
                node = Dot(left, right)
                factors.append(node if power == 1 else Pow(node, power))
        items.append((c, factors))
    if not items:
        return "0"
    out = []
    for c, factors in items:
        if c.im != 0:
            return None
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        if mag != 1 or not factors:
            factors = [Num(mag)] + factors
        node = factors[0] if len(factors) == 1 else Prod(tuple(factors))
        out.append((sign, node))
    return to_text(Sum(tuple(out)) if len(out) > 1 or out[0][0] == "-" else out[0][1])


# -- commands ---------------------------------------------------------------------


def cmd_realizations(args, cfg, explicit):
    out = []
    for name in catalog_names():
        r = get_realization(name, cfg.n, min(cfg.order, 1))
        out.append(Result(name, r.kind, False))
    return out


def cmd_star(args, cfg, explicit):
    r = _realization(cfg)
    f = _parse_input(args.f, cfg)
    g = _parse_input(args.g, cfg)
    if isinstance(f, PlaneWave) and isinstance(g, PlaneWave):
        if f.momentum == g.momentum:
            raise UsageError("the two plane waves need different momentum labels")
        D = D_map(r).rename({"k": "w", "q": "v"}).rename({"w": f.momentum, "v": g.momentum})
        return [Result.of_poly(f"D{mu}({f.momentum},{g.momentum})", D[mu]) for mu in range(r.n)]
    if isinstance(f, PlaneWave) or isinstance(g, PlaneWave):
        raise UsageError("star of a plane wave with a polynomial is not supported")
    return [Result.of_poly("f * g", star_polynomials(r, f, g))]


def cmd_kernel(args, cfg, explicit):
    r = _realization(cfg)
    out = []
    for label, m in (("K", K_map(r)), ("Kinv", K_inverse(r)), ("D", D_map(r)), ("S", antipode_S(r)), ("P", flow_P(r).P)):
        for mu in range(r.n):
            out.append(Result.of_poly(f"{label}{mu}", m[mu]))
    return out


def cmd_coproduct(args, cfg, explicit):
    r = _realization(cfg)
    G = _derivative_op(args.op, r, cfg)
    t = coproduct_of(r, G).poly
    return [Result.of_poly(f"Delta({args.op})", t, format_tensor(t, 2))]


def cmd_antipode(args, cfg, explicit):
    r = _realization(cfg)
    G = _derivative_op(args.op, r, cfg)
    return [Result.of_poly(f"S({args.op})", apply_antipode(r, G))]


def cmd_jacobian(args, cfg, explicit):
    r = _realization(cfg)
    J = jacobian_measure(r).poly
    out = [Result.of_poly("J", J)]
    inv = invariant_form(J, r.n, r.order)
    if inv is not None:
        out.append(Result("J invariant form", inv, J.is_zero()))
    return out


def cmd_dual(args, cfg, explicit):
    r = _realization(cfg)
    pair = dual_realization(r)
    out = []
    for al in range(r.n):
        for mu in range(r.n):
            out.append(Result.of_poly(f"phi~[{al}][{mu}]", pair.dual.phi[al][mu]))
    D = D_map(pair.dual)
    for mu in range(r.n):
        out.append(Result.of_poly(f"D~{mu}", D[mu]))
    return out


def cmd_verify(args, cfg, explicit):
    if explicit:
        realizations = [_realization(cfg)]
    else:
        realizations = list(catalog(cfg.n, cfg.order).values())
    return [Result.of_check(c) for c in run_suite(args.suite, realizations)]


COMMANDS = {
    "realizations": cmd_realizations,
    "star": cmd_star,
    "kernel": cmd_kernel,
    "coproduct": cmd_coproduct,
    "antipode": cmd_antipode,
    "jacobian": cmd_jacobian,
    "dual": cmd_dual,
    "verify": cmd_verify,
}


# -- output -----------------------------------------------------------------------


def _emit_text(command, results, out):
    if command == "verify":
        failed = 0
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            failed += not r.passed
            suffix = "" if r.expected_zero else " (expected nonzero)"
            line = f"{status} {r.name}{suffix}"
            if not r.passed:
                line += f": {r.value}"
            print(line, file=out)
        print(f"{len(results)} checks, {failed} failed", file=out)
    else:
        for r in results:
            print(f"{r.name} = {r.value}", file=out)


def _emit_json(command, cfg, results, out, error=None):
    doc = {"command": command, "config": cfg.describe() if cfg else None, "results": [r.as_dict() for r in results]}
    if error is not None:
        doc["error"] = error
    json.dump(doc, out, indent=2, ensure_ascii=False)
    out.write("\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = None
    try:
        cfg, explicit = _job(args)
        results = COMMANDS[args.command](args, cfg, explicit)
    except (UsageError, ConfigError, InconsistentRealization, KeyError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        error = {"message": str(message)}
        if isinstance(exc, UsageError) and exc.position is not None:
            error["position"] = exc.position
        if args.format == "json":
            _emit_json(args.command, cfg, [], out, error)
        else:
            print(f"error: {message}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit_json(args.command, cfg, results, out)
    else:
        _emit_text(args.command, results, out)
    if args.command == "verify":
        return 0 if all(r.passed for r in results) else 1
    return 0


def entry():
    sys.exit(main())
