"""farey test suite."""
