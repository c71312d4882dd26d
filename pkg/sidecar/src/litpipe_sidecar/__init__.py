"""HTTP sidecar serving 384-dimensional sentence embeddings."""

__version__ = "1.0.0"

from litpipe_sidecar.app import create_app

__all__ = ["create_app", "__version__"]
