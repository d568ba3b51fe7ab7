class KCError(Exception):
    """Base error carrying a stable violation code and a CLI exit code."""

    code = 'error'
    exit_code = 1

    def __init__(self, message, code=None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code

    def to_dict(self):
        return {'error': self.message, 'code': self.code}


class ConfigError(KCError):
    code = 'invalid_config'
    exit_code = 2


class InputError(KCError):
    code = 'invalid_input'
    exit_code = 3


class GraphError(InputError):
    # self_loop / not_found / invalid_time
    code = 'graph_violation'


class ArchiveError(InputError):
    # version_mismatch / truncated / malformed
    code = 'archive_malformed'


class StageDependencyError(KCError):
    code = 'missing_stage'
    exit_code = 4


class ShapeError(KCError):
    code = 'shape_mismatch'
    exit_code = 1
