from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser

from cli.dispatch import execute
from cli.models import COMMANDS
from cli.serializers import FORMATS
from suspensionlab.exceptions import AnomalyError, ConfigError, LabError


def load_document(path):
    if path is None:
        return {}
    try:
        with open(path, 'rb') as stream:
            return JSONParser().parse(stream)
    except OSError as exc:
        raise ConfigError(f'cannot read {path}: {exc.strerror}') from exc
    except ParseError as exc:
        raise ConfigError(f'{path} is not valid JSON: {exc.detail}') from exc


class Command(BaseCommand):
    help = 'Runs one lab command from a JSON run document and writes its report'

    def add_arguments(self, parser):
        parser.add_argument('command', choices=[name for name, _ in COMMANDS])
        parser.add_argument('--config', help='JSON run document; every knob has a default')
        parser.add_argument('--seed', type=int, help='overrides rng.seed')
        parser.add_argument('--out', help='report path; defaults to LAB_REPORT_DIR')
        parser.add_argument('--format', choices=[name for name, _ in FORMATS], help='overrides output.format')
        parser.add_argument('--workers', type=int, help='Monte Carlo streams; defaults to LAB_WORKERS')

    def handle(self, *args, **options):
        try:
            outcome = execute(
                load_document(options['config']),
                command=options['command'],
                seed=options['seed'],
                out=options['out'],
                fmt=options['format'],
                workers=options['workers'],
            )
        except AnomalyError as exc:
            if exc.report is not None:
                self.stderr.write(self.style.WARNING(f"Anomaly report written to {exc.details['report_path']}"))
            raise CommandError(exc.message, returncode=exc.exit_code) from exc
        except LabError as exc:
            raise CommandError(exc.message, returncode=exc.exit_code) from exc
        self.stdout.write(self.style.SUCCESS(f'Wrote {outcome.path} (run {outcome.run.pk})'))
