"""Shared fixtures: the model-upload corpus and its pipeline results."""

from pathlib import Path

import pytest

from ucat.pipeline import run_pipeline

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

GOLDEN_BASE = "http://www.url.com/Requirements"


@pytest.fixture(scope="session")
def rus_text() -> str:
    return (CORPUS / "model_upload.rus").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def usecase_text() -> str:
    return (CORPUS / "model_upload.usecase").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def types_text() -> str:
    return (CORPUS / "model_upload.types").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def pattern_text() -> str:
    return (CORPUS / "patterns" / "model-upload.rq").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden(rus_text, usecase_text, types_text):
    return run_pipeline(rus_text, usecase_text, types_text, base=GOLDEN_BASE)
