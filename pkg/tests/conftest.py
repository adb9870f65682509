import pytest

from lab_config import config

CAP_FIELDS = ("MINOR_CAP", "SUBGRAPH_CAP", "ISO_CAP", "ENUM_CAP", "SWEEP_CAP", "MEMO_MAX", "GIRTH_K_MAX", "JOBS")
DEFAULT_CAPS = {"MINOR_CAP": 10, "SUBGRAPH_CAP": 12, "ISO_CAP": 16, "ENUM_CAP": 7,
                "SWEEP_CAP": 12, "MEMO_MAX": 200000, "GIRTH_K_MAX": 64, "JOBS": 1}


@pytest.fixture(autouse=True)
def default_caps(monkeypatch):
    """Pin every cap to its default; the CLI's --cap mutates the shared config."""
    for name in CAP_FIELDS:
        monkeypatch.setattr(config, name, DEFAULT_CAPS[name])
    yield config


@pytest.fixture
def graph_file(tmp_path):
    def write(text: str, name: str = "g.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="ascii")
        return path

    return write
