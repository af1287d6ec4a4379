# -*- coding: utf-8 -*-

"""
Base foundation for commands.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Optional, Tuple, Union

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASS ****
class Process:
    """
    Represents one command of the toolkit.

    Attributes:
        name (str | None): Command name used on the command line.
        description (str): One-line help text.
        deterministic (bool): Whether the command always produces the same artifacts for the same configuration.
          - Commands that sample use the configured seed, so every shipped command is deterministic.
        uid (str): A unique identifier for this command.
    """
    # **** ATTRIBUTES ****
    name: Union[str, None] = None
    description: str = ""
    deterministic: bool = True
    uid: str

    # **** DUNDER METHODS ****
    def __new__(cls, *args, **kwargs):
        """
        Prevents instantiation.
        Commands are used through their class methods; an instance would carry nothing.
        """
        raise TypeError(f"{cls.__name__} cannot be instantiated.")

    @classmethod
    def __repr__(cls):
        return f"Process({cls.name}, deterministic={cls.deterministic}, uid={cls.get_uid()})"

    def __init_subclass__(cls, **kwargs):
        """
        Ensures `uid` is set exactly once when the subclass is defined.
        """
        super().__init_subclass__(**kwargs)

        # Generate UID once per subclass
        cls.uid = cls.get_uid()

    # **** CLASS METHODS ****
    @classmethod
    def get_uid(cls) -> str:
        """Generate a unique identifier for this command.

        Returns:
            str: The unique identifier.
        """
        return cls.name or cls.__name__

    @classmethod
    def execute(cls, document: Dict[str, Any], **kwargs) -> Tuple[str, Optional[dict]]:
        """Execute the command.

        Args:
            document (Dict[str, Any]): Validated experiment configuration.

        Returns:
            Tuple[str, Optional[dict]]: Message from the command and its summary record if successful.
        """
        raise NotImplementedError(f"{cls.__name__} must implement 'execute'.")

    @classmethod
    def verify(cls):
        """Check that a command class can be exposed on the command line.

        Raises:
            TypeError: If the name is not a lowercase identifier or the help text is empty.
        """
        if not isinstance(cls.name, str) or not cls.name.isidentifier() or cls.name != cls.name.lower():
            raise TypeError(f"Command {cls.__name__} needs a lowercase identifier as name, got {cls.name!r}.")
        if not cls.description.strip():
            raise TypeError(f"Command {cls.name} has no description.")
        if cls.uid != cls.get_uid():
            raise TypeError(f"Command {cls.name} changed its uid after definition.")


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
