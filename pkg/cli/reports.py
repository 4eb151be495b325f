"""Reports are {"header": ..., "body": ...}; the body depends on the run config alone."""
import csv
import functools
import hashlib
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings
from django.utils import timezone
from jsonschema import Draft202012Validator
from rest_framework.renderers import JSONRenderer

import suspensionlab

from .exceptions import ReportSchemaError
from .serializers import CSV

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parent / 'schemas' / 'report.schema.json'


def render(data, indent=None):
    context = {'indent': indent} if indent else None
    return JSONRenderer().render(data, renderer_context=context)


def body_digest(body):
    return hashlib.sha256(render(body)).hexdigest()


@functools.cache
def report_validator():
    schema = json.loads(SCHEMA_PATH.read_text())
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def validate_report(document):
    """Checks a parsed report against the published schema."""
    errors = sorted(report_validator().iter_errors(document), key=lambda error: list(error.absolute_path))
    if errors:
        problems = ['/'.join(map(str, error.absolute_path)) + ': ' + error.message for error in errors]
        raise ReportSchemaError(f'report does not match schema: {problems[0]}', errors=problems)
def build_header(echo, runtime, digest):
    return {
        'schema_version': settings.LAB_REPORT_SCHEMA_VERSION,
        'version': suspensionlab.__version__,
        'generated_at': timezone.now().isoformat(),
        'runtime': round(runtime, 3),
        'command': echo['command'],
        'config': echo,
        'rng': echo['rng'],
        'body_sha256': digest,
    }


@dataclass
class Report:
    header: dict
    body: dict
    rows: list | None = None

    def as_json(self):
        return render({'header': self.header, 'body': self.body}, indent=2) + b'\n'

    def as_csv(self):
        """Header and the non-tabular part of the body as '#' JSON lines, then the rows."""
        stream = io.StringIO()
        rest = {key: value for key, value in self.body.items() if key != 'rows'}
        stream.write('# ' + render({'header': self.header}).decode() + '\n')
        stream.write('# ' + render({'body': rest}).decode() + '\n')
        rows = self.rows or []
        if rows:
            writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator='\n')
            writer.writeheader()
            # csv writes None as an empty field
            writer.writerows(rows)
        return stream.getvalue().encode()

    def validate(self):
        validate_report(json.loads(render({'header': self.header, 'body': self.body})))

    def write(self, path, fmt):
        self.validate()
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(self.as_csv() if fmt == CSV else self.as_json())
        logger.info('wrote %s report to %s', self.header['command'], path)
        return path


def default_path(echo):
    """Reports without an explicit path are named after the digest of their config echo."""
    stem = hashlib.sha256(render(echo)).hexdigest()[:12]
    return Path(settings.LAB_REPORT_DIR) / f"{echo['command']}-{stem}.{echo['output']['format']}"
