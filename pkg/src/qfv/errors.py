"""Exception hierarchy.  Every domain error serializes to a JSON diagnostic."""
from __future__ import annotations


class QFVError(Exception):
    """Base class for domain errors raised by the library."""

    def details(self) -> dict:
        return {}

    def to_json(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        out.update(self.details())
        return out


class QuiverError(QFVError):
    pass


class ArrowOutOfRange(QuiverError):
    def __init__(self, arrow_index: int, arrow):
        self.arrow_index = arrow_index
        self.arrow = tuple(arrow)
        super().__init__(f"arrow {arrow_index} {self.arrow} has an endpoint out of range")

    def details(self):
        return {"arrow_index": self.arrow_index, "arrow": list(self.arrow)}


class CycleDetected(QuiverError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"quiver has an oriented cycle through vertices {self.cycle}")

    def details(self):
        return {"cycle": self.cycle}


class Disconnected(QuiverError):
    def __init__(self, component):
        self.component = sorted(component)
        super().__init__(f"quiver is disconnected; vertices {self.component} are unreachable from 0")

    def details(self):
        return {"unreachable": self.component}


class NotUniqueSource(QuiverError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        if vertex == 0:
            msg = "vertex 0 must be a source but has incoming arrows"
        else:
            msg = f"vertex {vertex} is a second source"
        super().__init__(msg)

    def details(self):
        return {"vertex": self.vertex}


class DegenerateRank(QuiverError):
    def __init__(self, vertex: int, s: int):
        self.vertex = vertex
        self.s = s
        super().__init__(f"vertex {vertex} has s = {s} incoming arrows; at least 2 are required")

    def details(self):
        return {"vertex": self.vertex, "s": self.s}


class PathExplosion(QFVError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"path enumeration exceeded the cap of {cap} paths")

    def details(self):
        return {"cap": self.cap}


class SearchTooLarge(QFVError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"search space of {size} points exceeds the cap of {cap}")

    def details(self):
        return {"size": self.size, "cap": self.cap}


class FieldError(QFVError):
    pass


class ZeroScaling(QFVError):
    def __init__(self, vertex):
        self.vertex = tuple(vertex)
        super().__init__(f"torus element vanishes at vertex {self.vertex}")

    def details(self):
        return {"vertex": list(self.vertex)}


class GaugeError(QFVError):
    pass


class NormalizationError(QFVError):
    pass


class UnstableInput(NormalizationError):
    def __init__(self, vertex):
        self.vertex = tuple(vertex)
        super().__init__(f"point is unstable: every arrow into {self.vertex} vanishes")

    def details(self):
        return {"vertex": list(self.vertex)}


class ZeroReference(NormalizationError):
    def __init__(self, vertex, ray: int):
        self.vertex = tuple(vertex)
        self.ray = ray
        super().__init__(
            f"at vertex {self.vertex} every nonzero incoming arrow (first: ray {ray}) "
            "has a vanishing base reference"
        )

    def details(self):
        return {"vertex": list(self.vertex), "ray": self.ray}


class InconsistentAtVertex(NormalizationError):
    """The point is not in V(I_R) minus V(B); carries the offending values.

    ``expected`` is the base reference value of the ray, ``found`` the value
    of the arrow after the vertex has been rescaled.
    """

    def __init__(self, vertex, ray: int, expected, found, binomial=None, value=None, fmt=str):
        self.vertex = tuple(vertex)
        self.ray = ray
        self.expected = expected
        self.found = found
        self.binomial = binomial
        self.value = value
        self._fmt = fmt
        super().__init__(
            f"at vertex {self.vertex}, ray {ray}: expected {fmt(expected)}, found {fmt(found)}"
        )

    def details(self):
        out = {
            "vertex": list(self.vertex),
            "ray": self.ray,
            "expected": self._fmt(self.expected),
            "found": self._fmt(self.found),
        }
        if self.binomial is not None:
            out["binomial"] = self.binomial.to_json()
            out["binomial_value"] = self._fmt(self.value)
        return out


class WitnessConstructionFailed(NormalizationError):
    def __init__(self, vertex, ray: int, missing):
        self.vertex = tuple(vertex)
        self.ray = ray
        self.missing = tuple(missing)
        super().__init__(
            f"relation witness for ray {ray} at {self.vertex} needs vertex {self.missing} "
            "outside the truncated quiver"
        )

    def details(self):
        return {"vertex": list(self.vertex), "ray": self.ray, "missing": list(self.missing)}
