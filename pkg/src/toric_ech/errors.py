"""Exception hierarchy shared by every module."""


class ToricECHError(Exception):
    """Base class for all errors raised by toric_ech."""


class ParseError(ToricECHError, ValueError):
    pass


class InvalidGenerator(ToricECHError, ValueError):
    pass


class InvalidDomain(ToricECHError, ValueError):
    pass


class SharedHyperbolicOrbit(ToricECHError):
    """Two generators both carry an ``h`` edge in the same direction."""


class DeltaOutOfRange(ToricECHError, ValueError):
    pass


class TargetNotMinimal(ToricECHError):
    pass


class HypothesisViolated(ToricECHError):
    pass


class ParamOutOfRange(ToricECHError, ValueError):
    pass


class AboveThreshold(ParamOutOfRange):
    """``a`` is not below (5 + sqrt 7)/3."""


class BelowThreshold(ParamOutOfRange):
    """No sharpness witness exists for this ``(a, d)``."""


class NotBelowVolumeBound(ParamOutOfRange):
    """``c >= 2 + a/2``: there is nothing to obstruct."""


class SearchCeiling(ToricECHError):
    pass


class DomainTooSmall(ParamOutOfRange):
    pass


class UnsupportedCriterion(ToricECHError):
    pass
