"""The Paranav gymnasium environments."""
