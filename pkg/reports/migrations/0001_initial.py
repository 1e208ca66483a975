# Generated by Django 4.2.7 on 2026-10-18 09:12

from django.db import migrations, models
import reports.writers


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CheckRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('transition', 'Transition family'), ('transform', 'Line-element transformation'), ('geodesic', 'Radial null geodesic')], max_length=20)),
                ('parameters', models.JSONField(default=dict, encoder=reports.writers.ReportEncoder)),
                ('passed', models.BooleanField(default=False)),
                ('report', models.JSONField(default=dict, encoder=reports.writers.ReportEncoder)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
