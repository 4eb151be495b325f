"""Errors shared by every app; exit_code is what the `lab` command returns."""


class LabError(Exception):
    exit_code = 1

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details


class ConfigError(LabError):
    exit_code = 2


class PreconditionError(LabError):
    exit_code = 3


class CoverageError(LabError):
    exit_code = 4


class AnomalyError(LabError):
    exit_code = 5

    def __init__(self, message, report=None, **details):
        super().__init__(message, **details)
        # A finished report may still be written before exiting with this code.
        self.report = report
