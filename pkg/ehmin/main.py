# type: ignore

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from ehmin import config
from ehmin.api import fermions, states

app = FastAPI(title="E_Hmin Entanglement API")

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(states.router, prefix="/api/states", tags=["states"])
app.include_router(fermions.router, prefix="/api/fermions", tags=["fermions"])


@app.get("/")
def read_root() -> dict[str, str]:
    return {"message": "E_Hmin entanglement measure API"}


if __name__ == "__main__":
    uvicorn.run("ehmin.main:app", host=config.HOST, port=config.PORT, reload=True)
