from suspensionlab.exceptions import ConfigError


class ProfileError(ConfigError):
    """An intensity profile or epsilon family that cannot be built."""
