from .analyze import analyze_cmd
from .complete import complete_cmd
from .embed import embed_cmd, export_walks_cmd
from .ingest import ingest_cmd
from .pipeline import pipeline_cmd

COMMANDS = (ingest_cmd, complete_cmd, embed_cmd, analyze_cmd, pipeline_cmd, export_walks_cmd)

__all__ = ['COMMANDS', 'analyze_cmd', 'complete_cmd', 'embed_cmd', 'export_walks_cmd',
           'ingest_cmd', 'pipeline_cmd']
