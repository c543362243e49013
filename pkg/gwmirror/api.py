import asyncio
import logging
from contextlib import asynccontextmanager
from datetime import datetime
from typing import Any, Callable, List, Literal, Optional

from fastapi import FastAPI, HTTPException, Query
from pydantic import ValidationError

from . import __version__, config
from .commands import jfun_report, lines_report, localize_report, quintic_report, verify_report
from .exceptions import ContractViolationError, GWMirrorError, SingularWeightError
from .instanton import QuinticReport
from .schemas import JFunctionReport, OracleReport, VerificationReport

logging.basicConfig(
    level=config.log_level("INFO"),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

MAX_ORDER = 12


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"Starting gwmirror API {__version__} (seed {config.default_seed()})")
    yield
    logger.info("Shutting down gwmirror API")


app = FastAPI(
    title="gwmirror API",
    description="Exact genus-0 Gromov-Witten invariants, mirror series and enumerative oracles.",
    version=__version__,
    lifespan=lifespan,
)


def _parse_degrees(raw: str) -> List[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise HTTPException(status_code=422, detail=f"degrees must be comma-separated integers, got {raw!r}")


async def _compute(label: str, func: Callable[..., Any], *args: Any) -> Any:
    """Run a computation off the event loop and map domain errors to HTTP statuses."""
    try:
        return await asyncio.to_thread(func, *args)
    except ValidationError as e:
        logger.warning(f"{label}: invalid input: {e}")
        raise HTTPException(status_code=422, detail=e.errors(include_url=False, include_context=False))
    except (ContractViolationError, SingularWeightError) as e:
        logger.error(f"{label}: consistency check failed: {e}")
        raise HTTPException(status_code=500, detail=str(e))
    except (GWMirrorError, ValueError) as e:
        logger.warning(f"{label}: rejected: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Unexpected error in {label}: {e}")
        raise HTTPException(status_code=500, detail=f"Internal error during {label}")


def _order(order: Optional[int], command: str) -> int:
    return order if order is not None else config.default_order(command)


@app.get("/health", tags=["Health"])
async def health_check():
    return {
        "status": "healthy",
        "timestamp": datetime.now().isoformat(),
        "version": __version__,
    }


@app.get("/lines", response_model=OracleReport, tags=["Oracles"])
async def lines(
    degree: int = Query(ge=1),
    ambient: int = Query(ge=2),
    seed: Optional[int] = None,
    trials: int = Query(default=config.DEFAULT_TRIALS, ge=1, le=10),
):
    seed = seed if seed is not None else config.default_seed()
    return await _compute("lines", lines_report, degree, ambient, seed, trials)


@app.get("/localize", response_model=OracleReport, tags=["Oracles"])
async def localize(
    ambient: int = Query(ge=1),
    degrees: str = Query(),
    curve_degree: int = Query(default=1, ge=1),
    seed: Optional[int] = None,
    trials: int = Query(default=config.DEFAULT_TRIALS, ge=1, le=10),
):
    seed = seed if seed is not None else config.default_seed()
    return await _compute("localize", localize_report, ambient, _parse_degrees(degrees), curve_degree, seed, trials)


@app.get("/quintic", response_model=QuinticReport, tags=["Mirror"])
async def quintic(order: Optional[int] = Query(default=None, ge=1, le=MAX_ORDER)):
    return await _compute("quintic", quintic_report, _order(order, "quintic"))


@app.get("/verify-embedding", response_model=VerificationReport, tags=["Mirror"])
async def verify_embedding(
    model: Literal["line", "conic"],
    order: Optional[int] = Query(default=None, ge=0, le=MAX_ORDER),
):
    return await _compute("verify-embedding", verify_report, model, _order(order, "verify-embedding"))


@app.get("/jfun", response_model=JFunctionReport, tags=["Mirror"])
async def jfun(
    ambient: int = Query(ge=1),
    degrees: str = Query(),
    order: Optional[int] = Query(default=None, ge=0, le=MAX_ORDER),
):
    return await _compute("jfun", jfun_report, ambient, _parse_degrees(degrees), _order(order, "jfun"))


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000, log_level="info")
