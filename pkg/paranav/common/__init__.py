"""Exceptions and helper functions that are shared by the paranav modules."""
