"""Exception hierarchy shared by all modules."""


class MamlabError(Exception):
    """Base class for all library errors."""


class ParseError(MamlabError):
    """Malformed scalar expression; carries the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(MamlabError):
    def __init__(self, name, position=None):
        suffix = f" (at position {position})" if position is not None else ""
        super().__init__(f"unknown symbol '{name}'{suffix}")
        self.name = name
        self.position = position


class DivisionByZeroScalar(MamlabError):
    """Division by the canonical zero scalar."""


class PrecisionExhausted(MamlabError):
    """An interval sign test still straddles zero at the maximum precision.

    For canonical zero this never fires (zero is decided structurally); a
    nonzero scalar whose real value is zero violates the declared algebraic
    independence of the symbols.
    """

    def __init__(self, max_bits):
        super().__init__(
            f"sign undecided at {max_bits} bits; the value may vanish, "
            "which would contradict the declared symbol independence"
        )
        self.max_bits = max_bits


class InputError(MamlabError):
    """Bad user input: schema violations, out-of-range indices, shape mismatches."""


class NotAFaceError(InputError):
    def __init__(self, face):
        super().__init__(f"{sorted(face)} is not a face of the complex")
        self.face = face
