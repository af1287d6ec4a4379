# -*- coding: utf-8 -*-

"""
Application wrapper for commands: configuration, artifacts and error records.
"""

# **** IMPORTS ****
import json
import logging
from pathlib import Path
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from treewalk import config, registry
from treewalk.algebra.automorphism import DEFAULT_ORACLE
from treewalk.fixtures import GroupConfig, config_from_file, measure_from_weights
from treewalk.processes.process import Process
from treewalk.rwidf.measure import FiniteMeasure
from treewalk.util import atomic_write_text, canonical_json
from treewalk.exceptions import TreewalkError
from treewalk.data_structures.data_structures.experiment_config.experiment_config import ExperimentConfig
from treewalk.data_structures.data_structures.run_summary.run_summary import RunSummary

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True)
class RunContext:
    """
    Everything a command needs, resolved from its configuration document.

    Attributes:
        document (Dict[str, Any]): Validated configuration.
        group (GroupConfig): Group with its generators.
        measure (FiniteMeasure): Step measure (default or from the weight table).
        levels (range): Level range.
        ks (range): k range.
        seed (int): Seed for every sampled quantity.
        samples (int): Sample count for Monte-Carlo quantities (0 means the command default).
        out_dir (Path): Artifact directory.
    """
    document: Dict[str, Any]
    group: GroupConfig
    measure: FiniteMeasure
    levels: range
    ks: range
    seed: int
    samples: int
    out_dir: Path


class ExperimentProcess(Process):
    """
    Command wrapped for command-line usage.

    Subclasses implement `run`, returning a JSON-ready results dict and the
    artifacts to write as {file name: text}.
    """

    def __init_subclass__(cls, **kwargs):
        """
        Verifies each command class when it is defined.
        """
        super().__init_subclass__(**kwargs)

        # Validate subclass attributes before the command is registered
        cls.verify()

    # **** CLASS METHODS ****
    @classmethod
    def get_uid(cls) -> str:
        return cls.name or cls.__name__

    @classmethod
    def verify(cls):
        """
        Raises:
            TypeError: As `Process.verify`, or when `run` is not overridden.
        """
        super().verify()
        if "run" not in vars(cls):
            raise TypeError(f"Class {cls.__name__} must implement 'run'.")

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        raise NotImplementedError(f"{cls.__name__} must implement 'run'.")

    @classmethod
    def prepare(cls, document: Dict[str, Any], out_dir: Path) -> RunContext:
        """
        Resolves the group source and measure of a configuration document.

        Raises:
            ConfigError: If the document is invalid or names a missing file.
            UnknownFixtureError: If the fixture is not known.
        """
        ExperimentConfig.verify_structure(document)
        apply_budgets(document["budgets"])
        source = document["source"]
        if "fixture" in source:
            group = registry.register_fixture(source["fixture"])
        else:
            group = config_from_file(Path(source["file"]), source["kind"])
        measure_spec = document["measure"]
        if measure_spec["kind"] == "table":
            measure = measure_from_weights(group, measure_spec["weights"], measure_spec["symmetric"])
        else:
            measure = group.measure
        low, high = document["levels"]
        k_low, k_high = document["k"]
        return RunContext(
            document=document,
            group=group,
            measure=measure,
            levels=range(low, high + 1),
            ks=range(k_low, k_high + 1),
            seed=document["seed"],
            samples=document["samples"],
            out_dir=Path(out_dir),
        )

    @classmethod
    def execute(cls, document: Dict[str, Any], out_dir: Optional[Path] = None) -> Tuple[str, Optional[dict]]:
        """
        Runs the command and writes its artifacts, `summary.json` and, on failure, `error.json`.

        Returns:
            Tuple[str, Optional[dict]]: Completion message and the summary record.

        Raises:
            TreewalkError: Re-raised after the error record is written.
        """
        out_dir = Path(out_dir) if out_dir is not None else config.OUTPUT_DIR
        config_digest = ExperimentConfig.digest(document)
        logger.info(f"Running {cls.name} (config {config_digest})")
        try:
            context = cls.prepare(document, out_dir)
            results, artifacts = cls.run(context)
        except TreewalkError as e:
            logger.error(f"{cls.name} failed: {e.message}", exc_info=e)
            write_error(out_dir, e)
            write_summary(out_dir, cls.name, "failed", config_digest, [], {"error": e.to_record()})
            raise

        written = []
        header = artifact_header(document)
        for file_name, text in sorted(artifacts.items()):
            path = atomic_write_text(out_dir / file_name, header + text)
            written.append(path.name)
            logger.info(f"Wrote {path}")
        summary = write_summary(out_dir, cls.name, "ok", config_digest, written, results)
        msg = f"{cls.name} completed: {len(written)} artifacts in {out_dir}."
        logger.info(msg)
        return (msg, summary)


# **** FUNCTIONS ****
def apply_budgets(budgets: Dict[str, int]) -> None:
    """Installs the configured budgets for the rest of the process."""
    config.TRIVIALITY_BUDGET = budgets["triviality"]
    config.SUPPORT_BUDGET = budgets["support"]
    config.VERTEX_BUDGET = budgets["vertices"]
    config.CLOSURE_BUDGET = budgets["closure"]
    config.EXACT_VERTEX_LIMIT = budgets["exact_vertices"]
    DEFAULT_ORACLE.budget = budgets["triviality"]


def artifact_header(document: Dict[str, Any]) -> str:
    """`#` comment lines carrying the toolkit version, the canonical config and its digest."""
    return (
        f"# {config.TOOLKIT_NAME} {config.VERSION}\n"
        f"# config {canonical_json(document)}\n"
        f"# digest {ExperimentConfig.digest(document)}\n"
    )


def write_summary(
    out_dir: Path, command: str, status: str, config_digest: str, artifacts: list, results: Dict[str, Any]
) -> Dict[str, Any]:
    summary = {
        "command": command,
        "status": status,
        "version": config.VERSION,
        "config_digest": config_digest,
        "artifacts": list(artifacts),
        "results": json.loads(canonical_json(results)),
    }
    RunSummary.verify_structure(summary)
    atomic_write_text(Path(out_dir) / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def write_error(out_dir: Path, error: TreewalkError) -> Path:
    return atomic_write_text(Path(out_dir) / "error.json", json.dumps(error.to_record(), indent=2, sort_keys=True) + "\n")


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
