"""
HTTP front end for qweyl.

Serves q(n) structure constants under /api/algebra and local Weyl module
computations under /api/modules; ``qweyl serve`` starts it with uvicorn.
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from qweyl.api.algebra import router as algebra_router
from qweyl.api.modules import router as modules_router

app = FastAPI(
    title="qweyl",
    description="Exact computations with q(n) current algebras and their Weyl modules",
    version="1.0.0",
)

# read-only endpoints, open to any origin
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

for router in (algebra_router, modules_router):
    app.include_router(router)


@app.get("/health")
async def health_check():
    return {"status": "healthy"}
