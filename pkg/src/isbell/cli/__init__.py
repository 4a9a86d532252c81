"""Command-line front end: a small definition language plus one command per operation."""
