"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class K3LatError(Exception):
    exit_code = 1


class VerificationFailure(K3LatError):
    exit_code = 1


class SchemaError(K3LatError, ValueError):
    exit_code = 2


class InconsistentData(K3LatError, ValueError):
    exit_code = 3


class IndefiniteForm(K3LatError, ValueError):
    exit_code = 4


class MissingCatalog(K3LatError, FileNotFoundError):
    exit_code = 5


class DegenerateForm(K3LatError, ValueError):
    exit_code = 3


class GlueError(K3LatError, ValueError):
    exit_code = 3


class UndefinedContribution(K3LatError, ValueError):
    exit_code = 3
