from suspensionlab.exceptions import LabError


class ReportSchemaError(LabError):
    """A rendered report does not match cli/schemas/report.schema.json."""
