"""Exception hierarchy.  Every precondition or certificate failure raises an
UltrametricError subclass; the CLI maps these to exit code 2 and surfaces
``code`` as a machine-readable identifier."""


class UltrametricError(Exception):
    code = "error"


class NotPrime(UltrametricError):
    code = "not-prime"


class SizeGuardExceeded(UltrametricError):
    code = "size-guard-exceeded"


class PrecisionError(UltrametricError):
    code = "insufficient-precision"


class NotIntegral(UltrametricError):
    code = "not-integral"


class HenselConditionFailed(UltrametricError):
    code = "hensel-condition-failed"

    def __init__(self, msg, f_val=None, df_val=None):
        super().__init__(msg)
        self.f_val = f_val
        self.df_val = df_val


class NotAResidueRoot(UltrametricError):
    code = "not-a-residue-root"


class ResidueRootNotSimple(UltrametricError):
    code = "residue-root-not-simple"


class SingularJacobian(UltrametricError):
    code = "singular-jacobian"


class DegreeMismatch(UltrametricError):
    code = "degree-mismatch"


class ResultantBoundViolated(UltrametricError):
    code = "resultant-bound-violated"


class NotAUnit(UltrametricError):
    code = "not-a-unit"


class RadiusViolation(UltrametricError):
    code = "radius-violation"


class RadiusMismatch(UltrametricError):
    code = "radius-mismatch"


class DominanceViolation(UltrametricError):
    code = "dominance-violation"


class NonMonic(UltrametricError):
    code = "non-monic"


class ZeroPolynomial(UltrametricError):
    code = "zero-polynomial"


class UnsplittableSlopes(UltrametricError):
    code = "unsplittable-slopes"


class UnsupportedRadius(UltrametricError):
    code = "unsupported-radius"


class MissingPrimeDivisor(UltrametricError):
    code = "missing-prime-divisor"


class UnsupportedPlace(UltrametricError):
    code = "unsupported-place"
