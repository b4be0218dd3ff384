"""Small builders for in-memory fixture documents used across test modules."""

from __future__ import annotations

import json

from lowdup.fixture import load_fixture
from lowdup.model import ProgramModel


def doc(*classes) -> str:
    return json.dumps({"classes": list(classes)})


def clazz(name, kind="class", extends=None, implements=(), methods=()):
    return {
        "name": name,
        "kind": kind,
        "extends": extends,
        "implements": list(implements),
        "methods": list(methods),
    }


def method(name="m", descriptor="()V", abstract=False, tokens=("RETURN",)):
    return {
        "name": name,
        "descriptor": descriptor,
        "abstract": abstract,
        "tokens": [] if abstract else list(tokens),
    }


def program(*classes) -> ProgramModel:
    return load_fixture(doc(*classes))
