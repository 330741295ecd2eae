"""
Service layer package.

Each module is a set of functions over the value types in app.models:
path_service, permutation_service, lastfall_service, blocks_service,
topdown_service, chain_service, mixing_service, pipeline_service and
verification_service.
"""
