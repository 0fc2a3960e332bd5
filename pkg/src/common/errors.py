"""
Error types raised across the link prediction pipeline.

Each error carries a short machine-readable ``kind`` and the process exit code
the command line maps it to.
"""


class LinkBenchError(Exception):
    kind = "error"
    exit_code = 1

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_record(self):
        record = {"error": self.kind, "exit_code": self.exit_code, "message": self.message}
        record.update(self.details)
        return record


class UsageError(LinkBenchError):
    kind = "usage"
    exit_code = 2


class MissingInputError(LinkBenchError):
    kind = "missing_input"
    exit_code = 3


class SchemaMismatchError(LinkBenchError):
    kind = "schema_mismatch"
    exit_code = 4


class EdgeFileParseError(SchemaMismatchError):
    kind = "parse_error"

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}", line=line_number)
        self.line_number = line_number


class GraphInputError(SchemaMismatchError):
    kind = "graph_input"

    def __init__(self, message, record_index):
        super().__init__(f"record {record_index}: {message}", record=record_index)
        self.record_index = record_index


class ConfigError(LinkBenchError):
    kind = "invalid_config"
    exit_code = 5


class InsufficientDataError(LinkBenchError):
    kind = "insufficient_data"
    exit_code = 6


class InsufficientPairsError(InsufficientDataError):
    kind = "insufficient_pairs"

    def __init__(self, message, available, requested):
        super().__init__(message, available=available, requested=requested)
        self.available = available
        self.requested = requested


class TrainingDivergedError(LinkBenchError):
    kind = "training_diverged"
    exit_code = 7


class NodeRangeError(SchemaMismatchError):
    kind = "node_out_of_range"
