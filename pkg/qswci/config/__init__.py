from .settings import KltConfig, QswciConfig, SearchConfig, VolumeConfig

__all__ = ["KltConfig", "QswciConfig", "SearchConfig", "VolumeConfig"]
