# Generated by Django 5.0.8 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='Run',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('check', 'Condition verdicts'), ('asymptotics', 'Series asymptotics'), ('classify', 'Classification'), ('bracket', 'Bifurcation bracket'), ('clt', 'Weighted Skellam CLT'), ('claim2', 'Tail decay'), ('stopping', 'Stopping time construction'), ('hopf', 'Hopf diagnostic'), ('scan', 'Intensity scan'), ('tails', 'Skellam tails'), ('continuous', 'Continuous base bound')], max_length=32)),
                ('config', models.JSONField(default=dict)),
                ('seed', models.DecimalField(blank=True, decimal_places=0, max_digits=20, null=True)),
                ('status', models.PositiveSmallIntegerField(blank=True, null=True)),
                ('report_path', models.CharField(blank=True, max_length=500)),
                ('body_digest', models.CharField(blank=True, max_length=64)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ('-created_at',),
            },
        ),
    ]
