"""Exception types shared across the package.

Every error carries a short machine-readable slug that the CLI uses for its
JSON error payloads (exit code 1).
"""


class KlabError(Exception):
    """Base class for domain errors."""

    slug = "error"


class InvalidSpecError(KlabError):
    slug = "invalid-spec"


class InvalidElementError(KlabError):
    slug = "invalid-element"


class InvalidInputError(KlabError):
    slug = "invalid-input"


class NeedsCapError(KlabError):
    slug = "needs-cap"


class NeedsBoxError(KlabError):
    slug = "needs-box"


class UnsupportedError(KlabError):
    slug = "unsupported"


class InvalidLocalizationError(KlabError):
    slug = "invalid-localization"


class OutOfHypothesisError(KlabError):
    slug = "out-of-hypothesis"


class GuardError(KlabError):
    slug = "guard"


class SurveyFailureError(KlabError):
    slug = "survey-failure"
