"""
CLI Module - Settings, run configuration, encodings and subcommands of the
command-line tool
"""
