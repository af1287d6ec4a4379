# -*- coding: utf-8 -*-

"""
Registries for commands and group fixtures.
"""

# **** IMPORTS ****
import logging
from typing import Optional

from treewalk.processes.process import Process
from treewalk.fixtures import GroupConfig, build_fixture, fixture_names

# **** CONSTANTS *****
process_registry: set[Process] = set()
fixture_registry: dict[str, GroupConfig] = {}

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** FUNCTIONS ****
def register_processes(classes: set[Process]):
    """Registers discovered command classes."""
    for process_cls in classes:
        known = fetch_process_by_name(process_cls.name)
        if known is not None and known is not process_cls:
            raise TypeError(f"Two commands are named {process_cls.name}: {known.__name__} and {process_cls.__name__}")
    process_registry.update(classes)

def fetch_process_by_name(name: str) -> Optional[Process]:
    """Fetches a command by name."""
    for process in process_registry:
        if process.name == name:
            return process

def fetch_process_by_uid(uid: str) -> Optional[Process]:
    """Fetches a command by UID."""
    for process in process_registry:
        if process.uid == uid:
            return process

def command_names() -> list[str]:
    return sorted(process.name for process in process_registry)

def register_fixture(name: str) -> GroupConfig:
    """
    Returns the fully built group configuration of a named fixture.

    Raises:
        UnknownFixtureError: If no fixture has this name.
    """
    known = fixture_registry.get(name)
    if known is None:
        known = build_fixture(name)
        fixture_registry[name] = known
        logger.info(f"Registered fixture {name} ({len(known.generators)} generators)")
    return known

def known_fixtures() -> tuple[str, ...]:
    return fixture_names()


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be executed directly.")
