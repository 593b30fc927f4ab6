"""Exception types shared across the package."""


class ReebOrbitError(Exception):
    """Base class for all package errors."""


class ParseError(ReebOrbitError):
    """Malformed input file or JSON document."""


class DataError(ReebOrbitError):
    """Well-formed input with invalid numeric data (e.g. non-positive area)."""


class TopologyError(ReebOrbitError):
    """Input mesh is not an oriented surface (non-manifold edge,
    inconsistent orientation, disconnected 1-skeleton)."""


class UnsupportedMap(ReebOrbitError):
    """remap() was given a transformation it does not implement."""


class NotSimpleMorse(ReebOrbitError):
    """Operation requires a field that passed validation."""


class UnclassifiableTransition(ReebOrbitError):
    """Level transition at a critical component matches no vertex type."""


class SlabTooWide(ReebOrbitError):
    """Slab around a critical value could not be shrunk to a proper one."""


class InsufficientSamples(ReebOrbitError):
    """Asymptotic fit requested with a window larger than the profile."""


class LevelOnVertex(ReebOrbitError):
    """Query level hits a mesh vertex exactly; perturb the query value."""


class NoSolution(ReebOrbitError):
    """Circulation system is infeasible on a closed graph."""

    def __init__(self, total_moment: float):
        super().__init__(
            f"no circulation function exists: total moment {total_moment!r} != 0"
        )
        self.total_moment = total_moment


class InfeasibleTarget(ReebOrbitError):
    """Requested circulation/cycle data cannot be realized by any one-form."""


class InvalidGraph(ReebOrbitError):
    """Measured Reeb graph violates a structural invariant."""


class AmbiguousMatching(ReebOrbitError):
    """Vertex f-values too close to force the candidate bijection."""


class NonIntegerFormulaValue(ReebOrbitError):
    """The closed genus formula evaluated to a non-integer."""

    def __init__(self, value: float):
        super().__init__(f"genus formula returned non-integer value {value!r}")
        self.value = value
