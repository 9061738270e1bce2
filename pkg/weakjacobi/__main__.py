"""Allow `python -m weakjacobi`."""

from .cli import main

main()
