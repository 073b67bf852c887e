import json
import os
import tempfile

import pytest  # type: ignore

from cylab.arrangement import ModuliPointPn, from_moduli
from cylab.storage.jsonfile import JsonFileStore, open_store

temp_filename: str = ""


@pytest.fixture(scope="session", autouse=True)
def setup_before_tests():
    global temp_filename
    temp_file = tempfile.NamedTemporaryFile(delete=False, dir=".", suffix=".json")
    temp_filename = temp_file.name

    yield

    temp_file.close()
    os.remove(temp_file.name)
    if os.path.exists(temp_file.name + ".lock"):
        os.remove(temp_file.name + ".lock")


def test_store_connect():
    store = JsonFileStore()

    with pytest.raises(AttributeError):
        store.connect()

    with pytest.raises(AttributeError):
        store.read()

    store.connect(filename="-{}InValidFil#name.json")
    with pytest.raises(FileNotFoundError):
        store.read()


def test_store_disconnect():
    store = JsonFileStore()
    store.connect(filename=temp_filename)
    assert store.filename == temp_filename

    store.disconnect()
    assert store.filename is None


def test_store_read():
    store = JsonFileStore()
    store.connect(filename=temp_filename)

    with open(temp_filename, "w") as file:
        file.write("")

    with pytest.raises(ValueError):
        store.read()

    with open(temp_filename, "w") as file:
        file.write("[]")

    assert store.read() == []

    with pytest.raises(ValueError):
        store.read_arrangement()


def test_store_write():
    arrangement = from_moduli(ModuliPointPn((2, 3, 5)))

    with open_store(temp_filename) as store:
        store.write_arrangement(arrangement)
        assert store.read_arrangement() == arrangement

    with open(temp_filename) as file:
        data = json.load(file)

    assert data["n"] == 3
    assert data["columns"][5] == ["1", "2", "3", "5"]


def test_store_writes_fractions_as_strings():
    with open_store(temp_filename) as store:
        store.write({"s": ModuliPointPn((2, 3, 5)).s, "tags": {"b", "a"}})
        assert store.read() == {"s": ["2", "3", "5"], "tags": ["a", "b"]}
