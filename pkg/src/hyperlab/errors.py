"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: validation problems exit
with 1, resource-guard refusals with 3 (theory-comparison failures exit
with 2 but are reported through return values, not exceptions).
"""


class HyperlabError(Exception):
    """Base class for all errors raised by hyperlab."""


class ValidationError(HyperlabError):
    """Malformed or out-of-contract input (bad parameters, bad files)."""


class ResourceLimitError(HyperlabError):
    """A brute-force or sampling guard refused to run an oversized job."""
