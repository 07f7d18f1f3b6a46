"""Exception hierarchy shared by all floatbody modules."""


class FloatBodyError(ValueError):
    """Base class for every error raised by this package."""


class GeometryError(FloatBodyError):
    """Input polygon is malformed (self-intersecting, clockwise, too few vertices)."""


class DegeneratePolygon(GeometryError):
    pass


class NotSurfacePiercing(GeometryError):
    pass


class DepthConflict(GeometryError):
    pass


class ZeroMass(FloatBodyError):
    pass


class CornerPoint(FloatBodyError):
    """Requested a normal at a vertex of the wetted contour where it is undefined."""


class PolePoint(FloatBodyError):
    pass


class FocusPoint(FloatBodyError):
    pass


class FocusTouch(GeometryError):
    pass


class NoBracket(FloatBodyError):
    pass


class InfiniteDepth(FloatBodyError):
    pass


class NegativeRoot(FloatBodyError):
    """The stiffness pencil has a negative root: the floating position is unstable."""


class MeshFailure(FloatBodyError):
    pass


class SolverFailure(FloatBodyError):
    pass
