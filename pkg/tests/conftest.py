from pathlib import Path

import pytest

from coauthnet.pipeline import RunConfig, build_samples, load_corpus
from coauthnet.synth import DEFAULT_CORPUS_SEED, fixture_corpus_path, generate_corpus

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return fixture_corpus_path()


@pytest.fixture(scope="session")
def mini_dir() -> Path:
    return DATA / "mini_program"


@pytest.fixture(scope="session")
def default_corpus_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("default_corpus")
    generate_corpus(DEFAULT_CORPUS_SEED).write(root)
    return root


@pytest.fixture(scope="session")
def default_samples(default_corpus_dir, tmp_path_factory):
    """Program-period samples (graphs, reports, indexes) of the default corpus."""
    cfg = RunConfig(input_dir=default_corpus_dir, output_dir=tmp_path_factory.mktemp("unused"))
    return build_samples(load_corpus(cfg), cfg)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 11):
        terminalreporter.write_line(results.get(number, f"[NOT RUN] criterion {number:2d}: deselected, skipped or errored before reporting"))
