"""Configure Django so pytest can collect and run the Django test cases."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "nsdweights.settings")
django.setup()
