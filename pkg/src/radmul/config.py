"""Run configuration: JSON schema, validation, canonical digest, presets.

A configuration bundles the base algebra, the crossed-product factors, the
radial symbol, the two truncation parameters, the tolerances, and a seed::

    {
      "base_algebra": {"kind": "scalar"} | {"kind": "matrix", "dim": 2},
      "factors": [
        {"group": {"kind": "cyclic", "order": 2} | {"kind": "table", "table": [[...]]},
         "action": "trivial" | {"kind": "inner", "unitary": [[[re, im], ...], ...]}}
      ],
      "symbol": {"head": [1, 1],
                 "tail": {"kind": "constant", "limit": 0}
                       | {"kind": "geometric", "coefficient": 1, "ratio": 0.5, "limit": 0}},
      "truncation": {"fock_len": 5, "hankel_dim": 32},
      "tolerances": {"algebraic": 1e-13, "spectral": 1e-8, "eigen": 1e-10},
      "seed": 0
    }

Complex scalars are plain numbers or [re, im] pairs; the action unitary is
a row-major matrix of [re, im] pairs.  Inner actions are supported for
cyclic groups, which act through powers of the supplied unitary.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import CrossedFactor, FiniteGroup, TracialAlgebra
from .fock import Amalgam, FockSpace
from .symbols import ConstantTail, GeometricTail, RadialSymbol

DEFAULT_TOLERANCES = {"algebraic": 1e-13, "spectral": 1e-8, "eigen": 1e-10}


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


def _complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError("expected a number or an [re, im] pair, got %r" % (value,))


def _complex_matrix(rows) -> np.ndarray:
    try:
        return np.array([[_complex(v) for v in row] for row in rows], dtype=complex)
    except (TypeError, ConfigError) as exc:
        raise ConfigError("bad complex matrix: %s" % exc) from exc


@dataclass
class RunConfig:
    base_algebra: TracialAlgebra
    factors: list
    symbol: RadialSymbol
    fock_len: int
    hankel_dim: int
    tolerances: dict
    seed: int
    raw: dict = field(repr=False, default_factory=dict)

    def digest(self) -> str:
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()

    def amalgam(self) -> Amalgam:
        return Amalgam(self.factors)

    def space(self) -> FockSpace:
        return FockSpace(self.amalgam(), self.fock_len)


def _parse_base(fragment) -> TracialAlgebra:
    if not isinstance(fragment, dict) or "kind" not in fragment:
        raise ConfigError("base_algebra needs a 'kind'")
    kind = fragment["kind"]
    if kind == "scalar":
        return TracialAlgebra.scalar()
    if kind == "matrix":
        dim = fragment.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise ConfigError("matrix base_algebra needs a positive integer 'dim'")
        return TracialAlgebra.matrix(dim)
    raise ConfigError("unknown base_algebra kind %r" % (kind,))


def _parse_group(fragment) -> FiniteGroup:
    if not isinstance(fragment, dict) or "kind" not in fragment:
        raise ConfigError("factor group needs a 'kind'")
    try:
        if fragment["kind"] == "cyclic":
            return FiniteGroup.cyclic(int(fragment["order"]))
        if fragment["kind"] == "table":
            return FiniteGroup(fragment["table"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("bad group fragment: %s" % exc) from exc
    raise ConfigError("unknown group kind %r" % (fragment["kind"],))


def _parse_factor(base: TracialAlgebra, fragment) -> CrossedFactor:
    if not isinstance(fragment, dict):
        raise ConfigError("each factor must be an object")
    group = _parse_group(fragment.get("group", {}))
    action = fragment.get("action", "trivial")
    if action == "trivial":
        return CrossedFactor.trivial(base, group)
    if isinstance(action, dict) and action.get("kind") == "inner":
        is_cyclic = np.array_equal(
            group.table, FiniteGroup.cyclic(group.order).table)
        if not is_cyclic:
            raise ConfigError("inner actions are supported for cyclic groups only")
        unitary = _complex_matrix(action.get("unitary", []))
        if unitary.shape != (base.d, base.d):
            raise ConfigError("action unitary must be %d x %d" % (base.d, base.d))
        try:
            return CrossedFactor.inner_cyclic(base, group.order, unitary)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError("unknown action %r" % (action,))


def _parse_symbol(fragment) -> RadialSymbol:
    if not isinstance(fragment, dict):
        raise ConfigError("symbol must be an object")
    head = tuple(_complex(v) for v in fragment.get("head", []))
    tail_frag = fragment.get("tail", {"kind": "constant", "limit": 0})
    kind = tail_frag.get("kind")
    try:
        if kind == "constant":
            tail = ConstantTail(_complex(tail_frag.get("limit", 0)))
        elif kind == "geometric":
            tail = GeometricTail(_complex(tail_frag.get("coefficient", 1)),
                                 _complex(tail_frag["ratio"]),
                                 _complex(tail_frag.get("limit", 0)))
        else:
            raise ConfigError("unknown tail kind %r" % (kind,))
    except (KeyError, ValueError) as exc:
        raise ConfigError("bad symbol tail: %s" % exc) from exc
    return RadialSymbol(head=head, tail=tail)


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    base = _parse_base(data.get("base_algebra", {"kind": "scalar"}))
    factor_frags = data.get("factors")
    if not factor_frags:
        raise ConfigError("configuration needs at least one factor")
    factors = [_parse_factor(base, f) for f in factor_frags]
    symbol = _parse_symbol(data.get("symbol", {"head": [1.0]}))

    trunc = data.get("truncation", {})
    fock_len = int(trunc.get("fock_len", 5))
    hankel_dim = int(trunc.get("hankel_dim", symbol.default_hankel_dim()))
    if fock_len < 2:
        raise ConfigError("fock_len must be at least 2")
    if hankel_dim < 1:
        raise ConfigError("hankel_dim must be positive")
    if isinstance(symbol.tail, ConstantTail) and hankel_dim < symbol.head_end + 1:
        raise ConfigError("hankel_dim must cover the symbol head (need >= %d)"
                          % (symbol.head_end + 1))

    tolerances = dict(DEFAULT_TOLERANCES)
    tolerances.update(data.get("tolerances", {}))
    for name, value in tolerances.items():
        if not (isinstance(value, (int, float)) and value > 0):
            raise ConfigError("tolerance %r must be positive" % name)

    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")

    return RunConfig(base_algebra=base, factors=factors, symbol=symbol,
                     fock_len=fock_len, hankel_dim=hankel_dim,
                     tolerances=tolerances, seed=seed, raw=data)


def load_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read configuration: %s" % exc) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("configuration is not valid JSON: %s" % exc) from exc
    return parse_config(data)


def preset_config(name: str) -> dict:
    """Built-in model configurations.

    dih  -- scalar base, two order-2 factors (infinite dihedral flavor)
    mat2 -- 2x2 matrix base, two order-2 factors, one acting inner via
            conjugation by diag(1, -1)
    cy3  -- scalar base, two order-3 factors
    """
    presets = {
        "dih": {
            "base_algebra": {"kind": "scalar"},
            "factors": [
                {"group": {"kind": "cyclic", "order": 2}, "action": "trivial"},
                {"group": {"kind": "cyclic", "order": 2}, "action": "trivial"},
            ],
        },
        "mat2": {
            "base_algebra": {"kind": "matrix", "dim": 2},
            "factors": [
                {"group": {"kind": "cyclic", "order": 2}, "action": "trivial"},
                {"group": {"kind": "cyclic", "order": 2},
                 "action": {"kind": "inner",
                            "unitary": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}},
            ],
        },
        "cy3": {
            "base_algebra": {"kind": "scalar"},
            "factors": [
                {"group": {"kind": "cyclic", "order": 3}, "action": "trivial"},
                {"group": {"kind": "cyclic", "order": 3}, "action": "trivial"},
            ],
        },
    }
    if name not in presets:
        raise ConfigError("unknown preset %r" % (name,))
    data = dict(presets[name])
    data["symbol"] = {"head": [1.0, 1.0], "tail": {"kind": "constant", "limit": 0}}
    data["truncation"] = {"fock_len": 5, "hankel_dim": 32}
    data["seed"] = 0
    return data
