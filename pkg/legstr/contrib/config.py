"""

Central tolerance record and its loading.

Every numeric threshold used by legstr lives in Tolerances. Values are
layered, lowest precedence first:

    1) DEFAULTS below
    2) a YAML file, given explicitly or through LEGSTR_CONFIG
    3) environment variables LEGSTR_<NAME>, e.g. LEGSTR_THETA_TOL=1e-11
    4) keyword overrides (the CLI --tol flag lands here)

Library functions accept an optional ``tol`` argument and fall back to
get_tolerances() when it is None.

"""

import functools
import logging
import os
import sys

import yaml

from legstr.contrib.errors import ConfigError

__all__ = [
    "DEFAULTS",
    "ENV_PREFIX",
    "Tolerances",
    "load_tolerances",
    "get_tolerances",
    "setup_logging",
]

logger = logging.getLogger(__name__)

ENV_PREFIX = "LEGSTR_"

DEFAULTS = {
    # period map inversion
    "theta_tol": 1e-12,
    "newton_max_iter": 100,
    "bisection_max_iter": 200,
    "seed_grid": 24,
    "boundary_margin": 1e-9,
    # construction
    "samples_per_period": 512,
    "null_cone_tol": 1e-10,
    "legendrian_tol": 1e-8,
    "closure_tol": 1e-8,
    "monodromy_tol": 1e-8,
    "angular_check_tol": 1e-8,
    # differential invariants
    "identity_tol": 1e-8,
    "fubini_tol": 1e-6,
    "stress_tol": 1e-6,
    "momentum_tol": 1e-6,
    "degeneracy_tol": 1e-12,
    "singularity_tol": 1e-12,
    "verify_points": 64,
    # knot invariants
    "rounding_tol": 0.01,
    "tb_rounding_tol": 0.05,
    "pushoff_fraction": 1e-3,
    "axis_clearance": 1e-9,
    "max_step_angle": 1.5707963267948966,
    # oracles
    "quad_epsabs": 1e-12,
    "quad_epsrel": 1e-12,
    "quad_limit": 400,
    "ivp_rtol": 1e-12,
    "ivp_atol": 1e-12,
}


class Tolerances(object):
    """Immutable view over a complete set of DEFAULTS keys."""

    __slots__ = ("_values",)

    def __init__(self, **values):
        merged = dict(DEFAULTS)
        for key, value in values.items():
            merged[key] = _coerce(key, value)
        object.__setattr__(self, "_values", merged)

    def __getattr__(self, key):
        try:
            return self._values[key]
        except KeyError:
            raise AttributeError(key)

    def __setattr__(self, key, value):
        raise AttributeError("Tolerances are read-only")

    def __eq__(self, other):
        return isinstance(other, Tolerances) and \
            self._values == other._values

    def __hash__(self):
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self):
        return "Tolerances({})".format(
            ", ".join("{}={!r}".format(k, v)
                      for k, v in sorted(self._values.items())))

    def replace(self, **changes):
        values = dict(self._values)
        values.update(changes)
        return Tolerances(**values)

    def as_dict(self):
        return dict(sorted(self._values.items()))


def _coerce(key, value):
    if key not in DEFAULTS:
        raise ConfigError(key, "unknown key")
    kind = type(DEFAULTS[key])
    try:
        if kind is int:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError("not an integer")
            return int(value)
        return float(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(key, "expected {} ({})".format(kind.__name__, e))


def _read_yaml(path):
    try:
        with open(path) as f:
            content = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(path, str(e))
    if not isinstance(content, dict):
        raise ConfigError(path, "top level must be a mapping")
    # Allow the tolerances under a "tolerances:" section or at top level
    return content.get("tolerances", content)


def load_tolerances(path=None, environ=None, **overrides):
    environ = os.environ if environ is None else environ
    values = {}
    path = path or environ.get(ENV_PREFIX + "CONFIG")
    if path:
        logger.debug("Loading tolerances from {}".format(path))
        values.update(_read_yaml(path))
    for key in DEFAULTS:
        env_key = ENV_PREFIX + key.upper()
        if env_key in environ:
            values[key] = yaml.safe_load(environ[env_key])
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Tolerances(**values)


@functools.lru_cache(maxsize=1)
def get_tolerances():
    return load_tolerances()


def setup_logging(level=None):
    level = level or os.environ.get(ENV_PREFIX + "LOG_LEVEL", "WARNING")
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s")
