"""Exception hierarchy.

Every rejection carries enough structured data (attributes) for the CLI to
print a concrete witness.
"""


class SchemeError(ValueError):
    """Base class for all schemekit errors."""


# --- validation -------------------------------------------------------------

class ValidationError(SchemeError):
    axiom = "scheme axiom"


class NotPartition(ValidationError):
    axiom = "partition"


class DiagonalNotSingleColor(ValidationError):
    axiom = "diagonal"


class NotClosedUnderTranspose(ValidationError):
    axiom = "transpose"


class NotRegular(ValidationError):
    axiom = "regularity"

    def __init__(self, triple, pair1, count1, pair2, count2):
        self.triple = triple
        self.pairs = (pair1, pair2)
        self.counts = (count1, count2)
        r, s, t = triple
        super().__init__(
            f"intersection number c[{r},{s}]^{t} is not constant: "
            f"{count1} at pair {pair1}, {count2} at pair {pair2}"
        )


class ResidueNotThin(SchemeError):
    pass


# --- constructors -----------------------------------------------------------

class NotTransitive(SchemeError):
    pass


class UnsupportedFieldOrder(SchemeError):
    pass


class IndexDoesNotDivide(SchemeError):
    pass


class NotAGroup(SchemeError):
    pass


# --- analysis / desargues ---------------------------------------------------

class EmptyVertexSet(SchemeError):
    pass


class NotTwoValenced(SchemeError):
    pass


class LemmaViolation(AssertionError):
    """An internal cross-check that a proven identity must pass has failed."""


# --- isomorphisms -----------------------------------------------------------

class RankMismatch(SchemeError):
    pass


class TensorMismatch(SchemeError):
    def __init__(self, triple, source_value, target_value):
        self.triple = triple
        r, s, t = triple
        super().__init__(
            f"c[{r},{s}]^{t} = {source_value} but image entry is {target_value}"
        )


class NotABijection(SchemeError):
    pass


class SeedNotFaithful(SchemeError):
    pass


class NotSaturated(SchemeError):
    pass


class NotDesarguesian(SchemeError):
    pass


class IntersectionNotSingleton(SchemeError):
    def __init__(self, point, size):
        self.point = point
        self.size = size
        super().__init__(f"image set of point {point} has {size} elements, expected 1")


class FaithfulnessViolation(SchemeError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"map is not faithful on pair {pair}")


class AutNotTransitive(SchemeError):
    pass


# --- io ---------------------------------------------------------------------

class InputError(SchemeError):
    pass


class TokenCountMismatch(InputError):
    pass


class NonIntegerToken(InputError):
    pass
