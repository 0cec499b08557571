"""Exception hierarchy."""


class LatticeError(ValueError):
    """Base class for every error raised by this package."""


class UnknownElement(LatticeError):
    pass


class CyclicCovers(LatticeError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("covering relation has a cycle through " + " < ".join(map(str, self.cycle)))


class RedundantCover(LatticeError):
    def __init__(self, lower, upper, via=None):
        self.pair = (lower, upper)
        self.via = via
        msg = f"cover {lower} < {upper} is redundant"
        if via is not None:
            msg += f" (implied through {via})"
        super().__init__(msg)


class NotALattice(LatticeError):
    def __init__(self, a, b, kind="join"):
        self.witness = (a, b)
        self.kind = kind
        super().__init__(f"elements {a} and {b} have no unique {kind}")


class MissingBound(LatticeError):
    pass


class TooLarge(LatticeError):
    pass


class NoEmbedding(LatticeError):
    pass


class EmbeddingError(LatticeError):
    """The maintained planar diagram cannot accommodate the requested operation."""


class NotASquare(LatticeError):
    pass


class NotACell(LatticeError):
    pass


class NotAFilter(LatticeError):
    pass


class NotAnIdeal(LatticeError):
    pass


class NotAChain(LatticeError):
    pass


class ColorMismatch(LatticeError):
    def __init__(self, edge_a, edge_b, color_a, color_b):
        self.edges = (edge_a, edge_b)
        super().__init__(f"edge {edge_a} colored {color_a!r} is matched with edge {edge_b} colored {color_b!r}")


class GadgetNotFound(LatticeError):
    pass


class ColorMissingOnAxis(LatticeError):
    pass


class AssemblyContractViolation(LatticeError):
    def __init__(self, clause, detail, witness=None):
        self.clause = clause
        self.witness = witness
        super().__init__(f"N assembly contract ({clause}) violated: {detail}")


class StepError(LatticeError):
    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"step {step!r} failed: {cause}")


class ParseError(LatticeError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class MissingWitness(LatticeError):
    pass
