"""Shared test fixtures (none yet); anchors the tests directory on sys.path
so the frozen oracle module imports as `oracles`."""
