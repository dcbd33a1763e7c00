"""Command-line interface for geomodel."""
