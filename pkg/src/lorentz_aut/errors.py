"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class LorentzError(ValueError):
    code = "domain_error"

    def __init__(self, detail, **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context


class DimensionError(LorentzError):
    code = "dimension_mismatch"


class SignatureError(LorentzError):
    code = "bad_signature"


class NotIsometryError(LorentzError):
    code = "not_isometry"


class ConeError(LorentzError):
    """Raised for vectors or maps that violate the positive-cone bookkeeping."""

    code = "cone_violation"


class ZeroVectorError(LorentzError):
    code = "zero_vector"


class NotParabolicError(LorentzError):
    code = "not_parabolic"


class FrameError(LorentzError):
    code = "invalid_frame"


class NotTranslationError(LorentzError):
    code = "not_translation"


class ConfigError(LorentzError):
    code = "invalid_config"


class InconsistencyError(LorentzError):
    """A computed result contradicts a theorem the algorithm relies on."""

    code = "internal_inconsistency"


class SchemaError(LorentzError):
    code = "schema_violation"
