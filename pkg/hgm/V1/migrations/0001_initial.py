# Generated by Django 4.2.27 on 2026-09-02 10:14

from django.db import migrations, models
import django.db.models.deletion
import hgm.V1.managers


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SweepRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(max_length=50)),
                ('check_name', models.CharField(max_length=50)),
                ('config', models.JSONField(default=dict)),
                ('seed', models.BigIntegerField()),
                ('output_format', models.CharField(choices=[('json', 'json'), ('csv', 'csv')], default='json', max_length=10)),
                ('jobs', models.PositiveIntegerField(default=1)),
                ('total', models.PositiveIntegerField(default=0)),
                ('failed', models.PositiveIntegerField(default=0)),
                ('skipped', models.PositiveIntegerField(default=0)),
                ('started_on', models.DateTimeField(auto_now_add=True)),
                ('finished_on', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ('-started_on',),
            },
        ),
        migrations.CreateModel(
            name='VerificationRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('check_name', models.CharField(max_length=50)),
                ('q', models.BigIntegerField(blank=True, null=True)),
                ('t', models.CharField(blank=True, max_length=255, null=True)),
                ('map_name', models.CharField(blank=True, max_length=100, null=True)),
                ('variant', models.CharField(blank=True, default='', max_length=255)),
                ('passed', models.BooleanField()),
                ('skipped', models.BooleanField(default=False)),
                ('reason', models.CharField(blank=True, default='', max_length=255)),
                ('lhs', models.TextField(blank=True, null=True)),
                ('rhs', models.TextField(blank=True, null=True)),
                ('residual', models.FloatField(blank=True, null=True)),
                ('timing', models.FloatField(blank=True, null=True)),
                ('details', models.JSONField(blank=True, default=dict)),
                ('created_on', models.DateTimeField(auto_now_add=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='records', to='hgm_v1.sweeprun')),
            ],
            options={
                'ordering': ('check_name', 'q', 't', 'map_name', 'variant'),
                'indexes': [models.Index(fields=['check_name', 'passed'], name='hgm_v1_record_check_idx')],
            },
            managers=[
                ('objects', hgm.V1.managers.VerificationRecordManager()),
            ],
        ),
    ]
