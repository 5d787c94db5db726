"""Frame pipeline, evaluation and run artefacts."""
