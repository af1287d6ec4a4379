# -*- coding: utf-8 -*-

"""
Base foundation for all data structures.
"""

# **** IMPORTS ****
import json
import logging
import jsonschema
from pathlib import Path
from typing import Any, Dict, Type

from treewalk.exceptions import TreewalkError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASS ****
class DataStructure:
    """
    Represents a validated JSON document shape.

    Attributes:
        name (str | None): An optional human-readable name for the data structure.
        json_schema (Dict[str, Any]): JSON schema every document must satisfy.
        error_class (Type[TreewalkError]): Error raised when a document is rejected.
        uid (str): A unique identifier for this data structure.
    """
    # **** ATTRIBUTES ****
    name: str | None = None
    json_schema: Dict[str, Any] = {}
    error_class: Type[TreewalkError] = ValidationError
    uid: str

    # **** DUNDER METHODS ****
    def __new__(cls, *args, **kwargs):
        """
        Prevents instantiation.
        These classes are designed to represent unique forms of data.
        Instantiation doesn't make sense as any instance would be a change to the structure.
        """
        raise TypeError(f"{cls.__name__} cannot be instantiated.")

    def __init_subclass__(cls, **kwargs):
        """
        Ensures `uid` is set exactly once when the subclass is defined.
        """
        super().__init_subclass__(**kwargs)
        cls.uid = cls.get_uid()

    # **** CLASS METHODS ****
    @classmethod
    def get_uid(cls) -> str:
        """Generate a unique identifier for this data structure."""
        return cls.name or cls.__name__

    @classmethod
    def load_json_schema(cls, file_path: Path) -> None:
        """
        Read the schema shipped next to a structure module and check it against its metaschema.

        Raises:
            RuntimeError: If the packaged schema is missing or malformed.
        """
        try:
            schema = json.loads(file_path.read_text(encoding="utf-8"))
            jsonschema.validators.validator_for(schema).check_schema(schema)
        except (OSError, json.JSONDecodeError, jsonschema.exceptions.SchemaError) as e:
            raise RuntimeError(f"Broken schema for {cls.__name__} at {file_path.name}: {e}") from e
        cls.json_schema = schema
        logger.debug(f"Loaded schema for {cls.__name__} from {file_path.name}")

    @classmethod
    def verify_structure(cls, data: Any) -> bool:
        """
        Verify if the given data conforms to the JSON schema.

        Args:
            data (Any): The data to validate.

        Returns:
            bool: True if valid.

        Raises:
            TreewalkError: `error_class` when data does not conform to the schema.
        """
        try:
            jsonschema.validate(instance=data, schema=cls.json_schema)
            return True
        except jsonschema.exceptions.ValidationError as e:
            location = "/".join(str(part) for part in e.absolute_path)
            raise cls.error_class(
                f"Invalid {cls.name}: {e.message}" + (f" (at {location})" if location else ""),
                structure=cls.name,
            )


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
