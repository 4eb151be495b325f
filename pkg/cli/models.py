from django.db import models

COMMANDS = [
    ('check', 'Condition verdicts'),
    ('asymptotics', 'Series asymptotics'),
    ('classify', 'Classification'),
    ('bracket', 'Bifurcation bracket'),
    ('clt', 'Weighted Skellam CLT'),
    ('claim2', 'Tail decay'),
    ('stopping', 'Stopping time construction'),
    ('hopf', 'Hopf diagnostic'),
    ('scan', 'Intensity scan'),
    ('tails', 'Skellam tails'),
    ('continuous', 'Continuous base bound'),
]


class Run(models.Model):
    """One invocation of the lab command."""

    class Meta:
        ordering = ('-created_at',)

    command = models.CharField(max_length=32, choices=COMMANDS)
    config = models.JSONField(default=dict)
    seed = models.DecimalField(max_digits=20, decimal_places=0, null=True, blank=True)
    status = models.PositiveSmallIntegerField(null=True, blank=True)
    report_path = models.CharField(max_length=500, blank=True)
    body_digest = models.CharField(max_length=64, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    def __str__(self):
        return f'{self.command} #{self.pk} (status {self.status})'
