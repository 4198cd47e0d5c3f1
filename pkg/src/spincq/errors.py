"""Exception types raised across the package."""


class SpincqError(Exception):
    pass


class NotAdmissible(SpincqError, ValueError):
    pass


class PreconditionViolated(SpincqError, ValueError):
    pass


class InfiniteSupport(SpincqError, ValueError):
    pass


class NonGenericPolarization(SpincqError, ValueError):
    pass


class UnhandledComponentGeometry(SpincqError, ValueError):
    pass


class MissingAncestorData(SpincqError, KeyError):
    pass


class OnWall(SpincqError, ValueError):
    pass


class UnknownDescriptor(SpincqError, ValueError):
    pass


class RouteMismatch(SpincqError, AssertionError):
    """Two independent computations of the same quantity disagreed."""
