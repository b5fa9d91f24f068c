"""Command-line front end and acceptance harness."""
