"""Job configuration: dimension, truncation order and a realization selector.

A config file is YAML.  Numbers must be integers or rational strings such as
"-1/2"; floats are rejected.  The realization is either a catalog name or a
mapping with a ``kind``:

    realization:
      kind: typeI            # typeI | typeII: Taylor table of phi(A, B)
      phi: {"0,0": 1, "1,0": -1}
    realization:
      kind: vector_like      # Taylor coefficients of f(B)
      f: [1, "-1/2"]
    realization:
      kind: linear
      alpha: -1
      beta: 0
      gamma: 0
    realization:
      kind: explicit         # phi matrix as expressions in a and d
      phi: [["-1 - i*a0*d0 + i*a1*d1", "0"], ["0", "1 + i*a0*d0 - i*a1*d1"]]
"""

from dataclasses import dataclass, field

import yaml

from .gaussrat import to_mpq
from .realizations import (
    build_explicit,
    build_linear,
    build_typeI,
    build_typeII,
    build_vector_like,
    get_realization,
)
from .series import ScalarSeries2

__all__ = ["ConfigError", "JobConfig", "load_config", "parse_config", "build_realization", "MIN_DIM", "MAX_DIM", "MAX_ORDER"]

MIN_DIM, MAX_DIM = 2, 6
MAX_ORDER = 4


class ConfigError(ValueError):
    """Invalid job configuration."""


@dataclass
class JobConfig:
    n: int = 4
    order: int = 3
    realization: object = None
    inputs: dict = field(default_factory=dict)

    def validate(self):
        if not isinstance(self.n, int) or not MIN_DIM <= self.n <= MAX_DIM:
            raise ConfigError(f"dimension must be an integer in [{MIN_DIM}, {MAX_DIM}], got {self.n!r}")
        if not isinstance(self.order, int) or not 0 <= self.order <= MAX_ORDER:
            raise ConfigError(f"order must be an integer in [0, {MAX_ORDER}], got {self.order!r}")
        return self

    def describe(self):
        """JSON-friendly summary."""
        real = self.realization
        if isinstance(real, dict):
            real = dict(real)
        return {"dimension": self.n, "order": self.order, "realization": real}


def _rational(value, what):
    if isinstance(value, bool):
        raise ConfigError(f"{what}: booleans are not numbers")
    try:
        return to_mpq(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what}: {exc}") from None


def _reject_floats(obj, path="config"):
    if isinstance(obj, float):
        raise ConfigError(f"{path}: floating point value {obj!r}; write an exact rational string")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _reject_floats(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _reject_floats(v, f"{path}[{i}]")


def parse_config(text):
    """JobConfig from YAML text."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    _reject_floats(data)
    known = {"dimension", "order", "realization", "inputs"}
    extra = set(data) - known
    if extra:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
    cfg = JobConfig(
        n=data.get("dimension", 4),
        order=data.get("order", 3),
        realization=data.get("realization"),
        inputs=dict(data.get("inputs") or {}),
    )
    return cfg.validate()


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _table(spec, order):
    """ScalarSeries2 from {"m,j": c} or [[m, j, c], ...]."""
    coeffs = {}
    if isinstance(spec, dict):
        items = []
        for key, c in spec.items():
            parts = [int(p) for p in str(key).split(",")] if not isinstance(key, int) else [key, 0]
            if len(parts) == 1:
                parts.append(0)
            items.append((parts[0], parts[1], c))
    elif isinstance(spec, list):
        items = [tuple(row) for row in spec]
    else:
        raise ConfigError("phi table must be a mapping or a list of [m, j, c]")
    for m, j, c in items:
        if m < 0 or j < 0:
            raise ConfigError("negative power in phi table")
        coeffs[(int(m), int(j))] = _rational(c, f"phi[{m},{j}]")
    return ScalarSeries2(order, coeffs)


def build_realization(spec, n, order):
    """A Realization from a catalog name or a mapping (see the module docstring); None means natural."""
    if spec is None:
        spec = "natural"
    if isinstance(spec, str):
        try:
            return get_realization(spec, n, order)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None
    if not isinstance(spec, dict):
        raise ConfigError("realization must be a name or a mapping")
    kind = spec.get("kind")
    name = spec.get("name")
    try:
        if kind in ("catalog", None):
            return get_realization(spec.get("name", ""), n, order)
        if kind in ("typeI", "typeII"):
            phi = _table(spec.get("phi", {"0,0": 1}), order)
            builder = build_typeI if kind == "typeI" else build_typeII
            return builder(phi, n, order, name or kind)
        if kind == "vector_like":
            coeffs = [_rational(c, f"f[{j}]") for j, c in enumerate(spec.get("f", [1]))]
            return build_vector_like(ScalarSeries2.in_B(order, coeffs), n, order, name or kind)
        if kind == "linear":
            abc = [_rational(spec.get(key), key) for key in ("alpha", "beta", "gamma")]
            return build_linear(*abc, n=n, order=order, name=name)
        if kind == "explicit":
            return _explicit(spec.get("phi"), n, order, name or "explicit")
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from None
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid realization: {exc}") from None
    raise ConfigError(f"unknown realization kind {kind!r}")


def _explicit(rows, n, order, name):
    from .expr import EvalError, ParseError, evaluate, parse

    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ConfigError(f"explicit phi must be an {n} x {n} list of expressions")
    phi = []
    for al, row in enumerate(rows):
        out = []
        for mu, text in enumerate(row):
            try:
                p = evaluate(parse(str(text)), n, order)
            except (ParseError, EvalError) as exc:
                raise ConfigError(f"phi[{al}][{mu}]: {exc}") from None
            if not hasattr(p, "terms") or p.has_group("x") or p.has_group("k") or p.has_group("q"):
                raise ConfigError(f"phi[{al}][{mu}] must depend on a and d only")
            out.append(p)
        phi.append(out)
    return build_explicit(n, order, phi, name)
