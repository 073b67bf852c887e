import json
from contextlib import contextmanager
from typing import Any, Iterator

from typing_extensions import override

from filelock import FileLock

from .base import BaseStore
from cylab.arrangement import Arrangement
from cylab.utils import jsonable


class JsonFileStore(BaseStore):
    """
    A JSON document on disk, used for arrangement inputs and report outputs.

    Attributes:
        filename (str | None): Path of the JSON file while connected.
    """

    filename: str | None = None

    @override
    def connect(self, **kwargs) -> None:
        """
        Binds the store to a file.

        Parameters:
            **kwargs: The 'filename' key is required.

        Raises:
            AttributeError: If 'filename' is not provided.
        """
        if not (filename := kwargs.get("filename")):
            raise AttributeError("No filename provided")

        self.filename = filename

    @override
    def disconnect(self) -> None:
        self.filename = None

    def _require_filename(self) -> str:
        if self.filename is None:
            raise AttributeError("Store is not connected")
        return self.filename

    @override
    def read(self) -> Any:
        """
        Reads the JSON document.

        Raises:
            FileNotFoundError: If the file does not exist.
            ValueError: If the file is not valid JSON.
        """
        with open(self._require_filename(), "r", encoding="UTF-8") as file:
            return json.load(file)

    @override
    def write(self, data: Any) -> None:
        """
        Writes `data` as JSON under a lock file, so concurrent runs never interleave.

        Fractions are written as canonical "a/b" strings.
        """
        filename = self._require_filename()
        with FileLock(filename + ".lock"):
            with open(filename, "w", encoding="UTF-8") as file:
                json.dump(jsonable(data), file, indent=2, ensure_ascii=False)
                file.write("\n")

    def read_arrangement(self) -> Arrangement:
        """
        Reads an arrangement in the `{"n", "m", "columns"}` format.

        Raises:
            ValueError: If the document is not an arrangement.
        """
        data = self.read()
        if not isinstance(data, dict) or not {"n", "m", "columns"} <= data.keys():
            raise ValueError(f"{self.filename} does not describe an arrangement")

        return Arrangement.from_dict(data)

    def write_arrangement(self, arrangement: Arrangement) -> None:
        self.write(arrangement.to_dict())


@contextmanager
def open_store(filename: str) -> Iterator[JsonFileStore]:
    """Store context manager, connected for the duration of the block."""
    store = JsonFileStore()
    store.connect(filename=filename)

    try:
        yield store
    finally:
        store.disconnect()
