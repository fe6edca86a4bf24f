"""Error types shared across the package.

Every error carries a stable machine-readable code so the HTTP layer and the
CLI can report failures uniformly.
"""


class MinipairError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        d = {"code": self.code, "message": self.message}
        if self.details:
            d["details"] = self.details
        return d


class FormatError(MinipairError):
    """Malformed input file or record."""
    code = "format_error"


class DuplicateEntryError(MinipairError):
    code = "duplicate_entry"


class MissingFeatureError(MinipairError):
    """A Matched referent lacks the agreement feature."""
    code = "missing_referent_feature"


class RuleError(MinipairError):
    """Invalid rule structure (unknown kind, bad back-reference, ...)."""
    code = "invalid_rule"


class UnresolvedPhraseError(MinipairError):
    code = "unresolved_phrase"


class EmptyCandidatesError(MinipairError):
    """No lexical entry satisfies a rule's constraints."""
    code = "empty_candidates"


class PhraseDepthError(MinipairError):
    """Phrase expansion cannot terminate within the depth budget."""
    code = "phrase_depth"


class DegenerateParadigmError(MinipairError):
    """Good and bad realizations came out identical."""
    code = "degenerate_paradigm"


class ScoringError(MinipairError):
    code = "scoring_error"


class ProtocolError(MinipairError):
    """External scorer backend violated the wire protocol."""
    code = "protocol_violation"


class AnalysisError(MinipairError):
    code = "analysis_error"


class ValidationError(MinipairError):
    """Questionnaire construction / agreement scoring failure."""
    code = "validation_error"


class NotFoundError(MinipairError):
    code = "not_found"
