"""
Commands - The sample, density, verify and roundtrip subcommands
Each takes a validated RunConfig and returns a process exit code
"""

import json
import logging
from typing import Optional

import numpy as np

from checks.roundtrip_check import roundtrip_check
from cli.config import RunConfig
from cli.io import SampleRow, open_output, parse_spectra, read_input, write_csv, write_json_lines
from density.joint import DensityParams, log_density_perturbed
from ensembles.samplers import sample_perturbed
from errors import InconsistentSpectrumError, SpectrumParseError
from harness.executor import get_executor
from harness.parallel import map_substreams
from harness.planner import get_planner
from harness.verifier import EXIT_OK, get_verifier
from perturbation.maps import PerturbedSpectrum, perturbed_eigenvalues, split_zero_eigenvalues
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

SAMPLE_KEY = 20
DEFAULT_SAMPLES = 1
DEFAULT_ROUNDTRIP_SAMPLES = 1000


def cmd_sample(config: RunConfig) -> int:
    """
    Draw perturbed samples and write them as CSV or JSON lines.

    Row i depends only on (seed, i); rows are written in index order.
    Rank-deficient Laguerre rows carry n - m - 1 exact zeros.
    """
    samples = config.samples if config.samples is not None else DEFAULT_SAMPLES
    spec, law = config.ensemble, config.coupling
    logger.info(f"Sampling {samples} draws of {spec.label} with seed {config.seed}")

    def one(rng: RngStream):
        sample = sample_perturbed(rng, spec, law)
        spectrum, _ = perturbed_eigenvalues(sample.jacobi, sample.l)
        return sample.l, spectrum.z

    draws = map_substreams(one, config.seed, samples, config.threads, key=SAMPLE_KEY)
    rows = [SampleRow(idx=i, l=l, z=z) for i, (l, z) in enumerate(draws)]
    with open_output(config.out) as handle:
        if config.format == "csv":
            write_csv(rows, spec.n, handle)
        else:
            write_json_lines(rows, handle)
    logger.info(f"Sample finished: {len(rows)} rows")
    return EXIT_OK


def _density_of(params: DensityParams, spectrum: PerturbedSpectrum, field: str) -> float:
    spec = params.spec
    if not spec.is_semidefinite:
        if spectrum.n != spec.n:
            raise SpectrumParseError(field, f"expected {spec.n} eigenvalues, got {spectrum.n}")
        return log_density_perturbed(params, spectrum)

    active = spec.m + 1
    if spectrum.n == active:
        return log_density_perturbed(params, spectrum)
    if spectrum.n != spec.n:
        raise SpectrumParseError(field, f"expected {spec.n} or {active} eigenvalues, got {spectrum.n}")
    try:
        nonzero, _ = split_zero_eigenvalues(spectrum, float(np.abs(spectrum.z).max()), expected=spec.n - active)
    except InconsistentSpectrumError as e:
        logger.info(f"{field}: {e}")
        return -np.inf
    return log_density_perturbed(params, nonzero)


def cmd_density(config: RunConfig, text: Optional[str] = None) -> int:
    """
    Evaluate the perturbed-eigenvalue log-density for each input spectrum.

    Writes one {"log_density": value} line per spectrum; points outside the
    configuration space give "-inf".

    Args:
        config: Run configuration; ``input`` names the spectrum file (stdin if unset)
        text: Input text, bypassing ``config.input``

    Raises:
        SpectrumParseError: malformed input or wrong number of eigenvalues
    """
    params = DensityParams(spec=config.ensemble, law=config.coupling)
    spectra = parse_spectra(text if text is not None else read_input(config.input))
    logger.info(f"Evaluating density of {len(spectra)} spectra under {config.ensemble.label}")

    with open_output(config.out) as handle:
        for i, spectrum in enumerate(spectra):
            value = _density_of(params, spectrum, f"spectrum {i}")
            encoded = float(value) if np.isfinite(value) else "-inf"
            handle.write(json.dumps({"log_density": encoded}) + "\n")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    """Plan, execute and verify the selected suites; JSON lines go to the output."""
    logger.info(f"Verifying {config.suite} for {config.ensemble.label}")
    plan = get_planner().create_plan(config)
    execution = get_executor().execute_plan(plan)
    verdict = get_verifier().verify(execution)
    with open_output(config.out) as handle:
        for line in verdict["lines"]:
            handle.write(line + "\n")
    return verdict["exit_code"]


def cmd_roundtrip(config: RunConfig) -> int:
    """
    Worst forward/inverse, two-route and (rank-deficient) constraint residuals
    over the configured number of draws, as one JSON line.
    """
    samples = config.samples if config.samples is not None else DEFAULT_ROUNDTRIP_SAMPLES
    report = roundtrip_check(config.ensemble, config.coupling, samples, config.seed, config.threads)
    with open_output(config.out) as handle:
        handle.write(report.to_json_line() + "\n")
    return EXIT_OK
