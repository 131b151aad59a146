#  Licensed under the Apache License, Version 2.0 (the "License"); you may
#  not use this file except in compliance with the License. You may obtain
#  a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#  WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#  License for the specific language governing permissions and limitations
#  under the License.

"""

Exceptions shared by every legstr module.

Each failure has its own class and builds its message in __init__, so
callers raise them with the offending values only:

    raise DomainError("m", m, "0 <= m < 1")

The CLI maps the families below onto process exit codes, see
legstr.apps.cli.EXIT_CODES.

"""

__all__ = [
    "LegstrError",
    "DomainError",
    "MonodromicDomainError",
    "ConvergenceError",
    "PrecisionLossError",
    "SingularityError",
    "DegeneracyError",
    "ResolutionError",
    "ClearanceError",
    "ConfigError",
    "DocumentError",
]


class LegstrError(Exception):
    pass


class DomainError(LegstrError):
    def __init__(self, name, value, constraint):
        super().__init__(
            "{}={} is outside the domain: requires {}".format(
                name, value, constraint))
        self.name = name
        self.value = value


class MonodromicDomainError(DomainError):
    def __init__(self, q2, q3, reason="not strictly inside the domain"):
        super(DomainError, self).__init__(
            "Modulus ({}, {}) is {}".format(q2, q3, reason))
        self.name = "modulus"
        self.value = (q2, q3)


class ConvergenceError(LegstrError):
    def __init__(self, what, iterations, residual):
        super().__init__(
            "{} did not converge after {} iterations "
            "(residual {:.3e})".format(what, iterations, residual))
        self.residual = residual


class PrecisionLossError(LegstrError):
    def __init__(self, what, residual, tolerance):
        super().__init__(
            "{}: closed form and cross-check differ by {:.3e} "
            "(tolerance {:.1e})".format(what, residual, tolerance))


class SingularityError(LegstrError):
    def __init__(self, what):
        super().__init__("Singular point: {}".format(what))


class DegeneracyError(LegstrError):
    def __init__(self, what, value):
        super().__init__(
            "Degenerate configuration: {} ({:.3e})".format(what, value))


class ResolutionError(LegstrError):
    def __init__(self, what, value, bound):
        super().__init__(
            "Sampling too coarse for {}: {:.3e} exceeds {:.3e}".format(
                what, value, bound))


class ClearanceError(LegstrError):
    def __init__(self, what, distance):
        super().__init__(
            "Curve passes too close to {} (distance {:.3e})".format(
                what, distance))


class ConfigError(LegstrError):
    def __init__(self, key, reason):
        super().__init__(
            "Invalid configuration entry {}: {}".format(key, reason))


class DocumentError(LegstrError):
    def __init__(self, path, reason):
        super().__init__(
            "Cannot process document {}: {}".format(path, reason))
