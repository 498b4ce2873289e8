import sys
from pathlib import Path

import pytest

from dastool.config import load_config
from dastool.evaluation import load_corpus

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "corpus"
SNIPPET_1 = CORPUS_DIR / "positives" / "01_repo_zenodo.txt"

FAKE_CONVERTER_SCRIPT = """\
import sys
data = open(sys.argv[1], "rb").read()
if data.startswith(b"FAIL"):
    sys.stderr.write("boom")
    sys.exit(3)
if data.startswith(b"EMPTY"):
    sys.exit(0)
sys.stdout.write(data.decode("utf-8"))
"""


@pytest.fixture(scope="session")
def config():
    return load_config("builtin")


@pytest.fixture(scope="session")
def corpus_docs():
    return load_corpus(CORPUS_DIR)


@pytest.fixture(scope="session")
def fake_converter(tmp_path_factory):
    """Command template for a stand-in PDF converter that echoes file bytes."""
    script = tmp_path_factory.mktemp("converter") / "fake_pdftotext.py"
    script.write_text(FAKE_CONVERTER_SCRIPT, encoding="utf-8")
    return f"{sys.executable} {script} {{path}}"
