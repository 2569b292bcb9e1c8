#!/usr/bin/env python
"""Entry point for the hgm verifiers: ``python manage.py verify bcm --q 7 --t 2`` and friends."""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'HgmK3.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install requirements.txt into the active environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
