"""설정 관리"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # 재현성 (S2S_SEED로 모든 기본 시드 덮어쓰기)
    seed: int = 0

    # 정렬 기본 점수
    match_score: float = 1.0
    mismatch_score: float = -1.0
    gap_penalty: float = -1.0

    # Jaro-Winkler
    winkler_prefix_weight: float = 0.1
    winkler_max_prefix: int = 4

    # 벡터 인덱스 (IVF)
    kmeans_iters: int = 25
    ivf_nlist: int = 4
    ivf_nprobe: int = 1
    top_k: int = 5

    # 정렬 출력
    render_line_wrap: int = 60
    gap_symbol: str = "-"

    # 로그 / CLI 출력
    log_level: str = "WARNING"
    report_elapsed: bool = True

    model_config = SettingsConfigDict(
        env_prefix="S2S_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"  # .env의 다른 필드 무시
    )


settings = Settings()
