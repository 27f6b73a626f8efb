# Stores the package version number so that it can be accessed from other modules.
__version__ = "0.1.0"
__version_tuple__ = __version__.split(".")
