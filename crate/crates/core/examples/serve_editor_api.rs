//! Drive the HTTP API in-process, or serve it.
//!
//! cargo run --example serve_editor_api            # one request, printed
//! cargo run --example serve_editor_api -- 8080    # listen on 127.0.0.1:8080

use axum::body::Body;
use axum::http::Request;
use clothoid_hermite::io::DEMO_INPUT;
use clothoid_hermite::service::{router, serve, ServiceConfig};
use http_body_util::BodyExt;
use tower::ServiceExt;

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    if let Some(port) = std::env::args().nth(1) {
        let addr = ([127, 0, 0, 1], port.parse::<u16>()?).into();
        serve(addr, ServiceConfig::default()).await?;
        return Ok(());
    }

    let input: serde_json::Value = serde_json::from_str(DEMO_INPUT)?;
    let request = serde_json::json!({
        "input": input,
        "scheme": {"kind": "four_point", "omega": -1.0 / 18.0},
        "levels": 4,
        "newton_steps": 1,
    });
    let response = router(ServiceConfig::default())
        .oneshot(
            Request::post("/api/subdivide")
                .header("content-type", "application/json")
                .body(Body::from(request.to_string()))?,
        )
        .await?;
    let status = response.status();
    let body = response.into_body().collect().await?.to_bytes();
    let report: serde_json::Value = serde_json::from_slice(&body)?;
    println!("{status}, {} bytes", body.len());
    for d in report["diagnostics"].as_array().into_iter().flatten() {
        println!(
            "level {}: max secant {:.4}, max mismatch {:.4}",
            d["level"],
            d["max_secant"].as_f64().unwrap_or(0.0),
            d["max_tangent_mismatch"].as_f64().unwrap_or(0.0)
        );
    }
    Ok(())
}
