"""Exception types raised by tempcc."""


class TccError(ValueError):
    """Base class for precondition and verification failures."""


class ParseError(TccError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotAModulator(TccError):
    def __init__(self, triple):
        self.triple = tuple(triple)
        super().__init__(f"graph minus modulator is not transitive, violation {self.triple}")


class NotInherentModulator(TccError):
    def __init__(self, claim, witness):
        self.claim = claim
        self.witness = tuple(witness)
        super().__init__(f"vertex set is not an inherent transitivity modulator: {claim} fails at {self.witness}")


class InstanceTooLarge(TccError):
    pass


class KTooSmall(TccError):
    pass


class NotAVertexCover(TccError):
    def __init__(self, edge):
        self.edge = tuple(edge)
        super().__init__(f"edge {self.edge} is not covered")


class NotProper(TccError):
    pass
