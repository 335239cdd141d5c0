"""HTTP service layer: pydantic schemas, FastAPI app, shared handlers."""
