"""
Subcommand groups; each module registers its parsers with `register(subparsers, parent)`
"""
