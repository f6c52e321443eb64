from functools import lru_cache

import pytest

from sextica.determinantal import sample_phi
from sextica.pipeline import PRESETS, run_family


@lru_cache(maxsize=None)
def cached_run(preset: str, seed: int, char: int = 32003):
    return run_family(preset, seed, char)


@lru_cache(maxsize=None)
def cached_section(preset: str, seed: int, char: int = 32003):
    cert = cached_run(preset, seed, char)
    if cert.sample is not None:
        return cert.sample.section
    return sample_phi(PRESETS[preset].spec, seed, char)


@pytest.fixture(scope="session")
def run():
    return cached_run


@pytest.fixture(scope="session")
def section():
    return cached_section
