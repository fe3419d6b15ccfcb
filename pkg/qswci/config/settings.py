from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Dict, List, Optional, Union
import yaml
from pathlib import Path

DEFAULT_CONFIG_PATH = Path(__file__).parent / "default_config.yaml"


@dataclass
class SearchConfig:
    jobs: int = 1
    mode: str = "strict"  # strict or necessary
    trust_codim_bound: bool = True
    show_progress: bool = True
    default_max_degree: Dict[str, int] = field(default_factory=lambda: {"2,1": 100})

    def max_degree_for(self, m: int, c: int) -> Optional[int]:
        return self.default_max_degree.get(f"{m},{c}")


@dataclass
class VolumeConfig:
    general_type_threefold: str = "1/420"
    fano_threefold: str = "1/330"

    def lower_bound(self, m: int, alpha: int) -> Optional[Fraction]:
        """Known volume lower bound for threefolds, None elsewhere."""
        if m != 3 or alpha == 0:
            return None
        return Fraction(self.general_type_threefold if alpha > 0 else self.fano_threefold)


@dataclass
class KltConfig:
    epsilon: str = "1"

    @property
    def value(self) -> Fraction:
        return Fraction(self.epsilon)


@dataclass
class QswciConfig:
    search: SearchConfig = field(default_factory=SearchConfig)
    volume: VolumeConfig = field(default_factory=VolumeConfig)
    klt: KltConfig = field(default_factory=KltConfig)

    @classmethod
    def from_yaml(cls, config_path: Union[str, Path]) -> "QswciConfig":
        """Load configuration from a YAML file."""
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_path, 'r') as f:
            config_dict = yaml.safe_load(f) or {}

        return cls(
            search=SearchConfig(**config_dict.get('search', {})),
            volume=VolumeConfig(**{k: str(v) for k, v in config_dict.get('volume', {}).items()}),
            klt=KltConfig(**{k: str(v) for k, v in config_dict.get('klt', {}).items()})
        )

    @classmethod
    def load_default(cls) -> "QswciConfig":
        return cls.from_yaml(DEFAULT_CONFIG_PATH)

    def to_yaml(self, config_path: Union[str, Path]) -> None:
        """Save configuration to a YAML file."""
        config_path = Path(config_path)
        config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(config_path, 'w') as f:
            yaml.dump(asdict(self), f, default_flow_style=False)

    def validate(self) -> List[str]:
        """Validate the configuration and return a list of validation errors."""
        errors = []

        if self.search.jobs <= 0:
            errors.append("Number of jobs must be positive")
        if self.search.mode not in ("strict", "necessary"):
            errors.append(f"Unknown quasismoothness mode: {self.search.mode}")
        for key, value in self.search.default_max_degree.items():
            parts = key.split(",")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                errors.append(f"Bad default_max_degree key '{key}', expected 'm,c'")
            if not isinstance(value, int) or value <= 0:
                errors.append(f"Default max degree for '{key}' must be a positive integer")

        for name in ("general_type_threefold", "fano_threefold"):
            try:
                if Fraction(getattr(self.volume, name)) <= 0:
                    errors.append(f"Volume bound {name} must be positive")
            except (ValueError, ZeroDivisionError):
                errors.append(f"Volume bound {name} is not a rational number")

        try:
            eps = self.klt.value
            if not 0 < eps <= 1:
                errors.append("epsilon must lie in (0, 1]")
        except (ValueError, ZeroDivisionError):
            errors.append("epsilon is not a rational number")

        return errors
