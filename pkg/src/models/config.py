import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional
import yaml

DEFAULT_CONFIG_PATH = os.path.realpath(
    os.path.join(os.path.dirname(__file__), '..', 'config.yaml')
)


@dataclass
class LoggingConfig:
    level: str
    log_file: Optional[str]

@dataclass
class ConjugacyConfig:
    max_elementary_steps: int

@dataclass
class GeneratorDefaults:
    seed: int
    max_nodes: int
    denominator_bound: int

@dataclass
class PlotConfig:
    samples: int

@dataclass
class ClassifyConfig:
    workers: int

@dataclass
class Config:
    logging: LoggingConfig
    conjugacy: ConjugacyConfig
    generator: GeneratorDefaults
    plot: PlotConfig
    classify: ClassifyConfig

    @classmethod
    def from_yaml(cls, filepath: str) -> "Config":
        with open(filepath, 'r') as f:
            data = yaml.safe_load(f)

        return cls(logging=LoggingConfig(**data["logging"]),
                   conjugacy=ConjugacyConfig(**data["conjugacy"]),
                   generator=GeneratorDefaults(**data["generator"]),
                   plot=PlotConfig(**data["plot"]),
                   classify=ClassifyConfig(**data["classify"])
                   )

    def to_dict(self) -> dict:
        return {
            "logging": {
                "level": self.logging.level,
                "log_file": self.logging.log_file
            },
            "conjugacy": {
                "max_elementary_steps": self.conjugacy.max_elementary_steps
            },
            "generator": {
                "seed": self.generator.seed,
                "max_nodes": self.generator.max_nodes,
                "denominator_bound": self.generator.denominator_bound
            },
            "plot": {
                "samples": self.plot.samples
            },
            "classify": {
                "workers": self.classify.workers
            }
        }


@lru_cache(maxsize=None)
def load_config(filepath: Optional[str] = None) -> Config:
    """Load (once per path) the configuration; ``PLCONJ_CONFIG`` overrides the default location."""
    path = filepath or os.environ.get('PLCONJ_CONFIG') or DEFAULT_CONFIG_PATH
    return Config.from_yaml(filepath=path)
