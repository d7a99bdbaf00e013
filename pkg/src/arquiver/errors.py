"""Exception types.

Every domain error carries a stable machine-readable ``code`` which the
command line front end reports on stderr.
"""


class ArquiverError(Exception):
    code = "error"


class RankOutOfRange(ArquiverError, ValueError):
    code = "rank_out_of_range"


class UnsupportedFamily(ArquiverError, ValueError):
    code = "unsupported_family"


class InvalidVertex(ArquiverError, ValueError):
    code = "invalid_vertex"


class InvalidAutomorphism(ArquiverError, ValueError):
    code = "invalid_automorphism"


class TreeMismatch(ArquiverError, ValueError):
    code = "tree_mismatch"


class IdentityInput(ArquiverError, ValueError):
    code = "identity_input"


class ParseError(ArquiverError, ValueError):
    code = "parse_error"


class UndefinedSymbolForFamily(ArquiverError, ValueError):
    code = "undefined_symbol_for_family"


class NotWeaklyAdmissible(ArquiverError, ValueError):
    code = "not_weakly_admissible"


class InfiniteQuotient(ArquiverError, ValueError):
    code = "infinite_quotient"


class NotDynkinType(ArquiverError, ValueError):
    code = "not_dynkin_type"


class KnittingError(ArquiverError, RuntimeError):
    code = "knitting_error"


class WindowOverflow(KnittingError):
    code = "window_overflow"


class WindowTooLarge(ArquiverError, RuntimeError):
    code = "window_too_large"


class UnrecognizedGenerator(ArquiverError, ValueError):
    code = "unrecognized_generator"


class DOutOfRange(ArquiverError, ValueError):
    code = "d_out_of_range"


class DeformationArityMismatch(ArquiverError, ValueError):
    code = "deformation_arity_mismatch"


class NotInRadicalSquare(ArquiverError, ValueError):
    code = "not_in_radical_square"


class DegreeCapExceeded(ArquiverError, RuntimeError):
    code = "degree_cap_exceeded"


class NotSelfinjective(ArquiverError, ValueError):
    code = "not_selfinjective"


class InvalidCharacteristic(ArquiverError, ValueError):
    code = "invalid_characteristic"
