"""Entry point for cluster-index-cli."""

from cluster_index.cli import app

if __name__ == "__main__":
    app()
