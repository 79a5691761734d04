use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use clothoid_hermite::io::VERSION;
use clothoid_hermite::service::{router, ServiceConfig};
use clothoid_hermite::RunReport;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn send(req: Request<Body>) -> (StatusCode, axum::http::HeaderMap, Vec<u8>) {
    let res = router(ServiceConfig::default()).oneshot(req).await.unwrap();
    let status = res.status();
    let headers = res.headers().clone();
    let body = res.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, headers, body)
}

fn post(body: &Value) -> Request<Body> {
    Request::post("/api/subdivide")
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(body.to_string()))
        .unwrap()
}

fn get(path: &str) -> Request<Body> {
    Request::get(path).body(Body::empty()).unwrap()
}

fn circle_request(levels: usize) -> Value {
    json!({
        "input": {
            "closed": true,
            "couples": [
                {"p": [1.0, 0.0], "normal": [-1.0, 0.0]},
                {"p": [0.0, 1.0], "normal": [0.0, -1.0]},
                {"p": [-1.0, 0.0], "normal": [1.0, 0.0]},
                {"p": [0.0, -1.0], "normal": [0.0, 1.0]}
            ]
        },
        "scheme": {"kind": "lane_riesenfeld", "n": 1},
        "levels": levels,
        "newton_steps": 0,
        "want_curvature": true
    })
}

#[tokio::test]
async fn circle_request_stays_on_circle() {
    let (status, headers, body) = send(post(&circle_request(3))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(headers[header::CONTENT_TYPE], "application/json");
    let report: RunReport = serde_json::from_slice(&body).unwrap();
    let last = report.levels.last().unwrap();
    assert_eq!(last.len(), 32);
    // 3-node quadrature on quarter arcs
    for h in last.couples() {
        assert!((h.point.norm() - 1.0).abs() < 1e-5, "{h:?}");
    }
    let kappa = &report.curvature.unwrap().kappa;
    assert!(kappa.iter().all(|k| (k - 1.0).abs() < 1e-2));
}

#[tokio::test]
async fn identical_requests_give_identical_bodies() {
    let mut req = circle_request(4);
    req["scheme"] = json!({"kind": "four_point", "omega": -0.0625});
    let (a, b) = tokio::join!(send(post(&req)), send(post(&req)));
    assert_eq!(a.0, StatusCode::OK);
    assert_eq!(a.2, b.2);
}

#[tokio::test]
async fn coincident_points_are_422_with_index() {
    let mut req = circle_request(2);
    req["input"]["couples"][2]["p"] = json!([0.0, 1.0]);
    let (status, _, body) = send(post(&req)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let err: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(err["code"], "duplicate_points");
    assert_eq!(err["index"], 1);
}

#[tokio::test]
async fn fit_failure_is_422_with_index() {
    // tangent reversed against the secant from couple 1 to 2
    let mut req = circle_request(1);
    req["input"] = json!({"closed": false, "couples": [
        {"p": [0.0, 0.0], "alpha": 0.0},
        {"p": [1.0, 0.0], "alpha": 0.0},
        {"p": [2.0, 0.0], "alpha": std::f64::consts::PI}
    ]});
    let (status, _, body) = send(post(&req)).await;
    let err: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{err}");
    assert_eq!(err["code"], "fit_failed");
    assert_eq!(err["index"], 1);
}

#[tokio::test]
async fn guards_and_validation_are_400_or_413() {
    let (status, _, body) = send(post(&circle_request(11))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let err: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(err["code"], "levels_out_of_range");

    let mut req = circle_request(1);
    let many: Vec<Value> = (0..513)
        .map(|j| json!({"p": [j as f64, 0.0], "alpha": 0.0}))
        .collect();
    req["input"] = json!({"closed": false, "couples": many});
    assert_eq!(send(post(&req)).await.0, StatusCode::PAYLOAD_TOO_LARGE);

    let mut req = circle_request(1);
    req["input"]["couples"][0]["alpha"] = json!(0.5);
    let (status, _, body) = send(post(&req)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let err: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(err["code"], "angle_and_normal");
    assert_eq!(err["index"], 0);

    let mut req = circle_request(1);
    req["scheme"] = json!({"kind": "four_point", "omega": 0.1});
    let (status, _, body) = send(post(&req)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["code"],
        "invalid_scheme"
    );

    let req = Request::post("/api/subdivide")
        .body(Body::from("{not json"))
        .unwrap();
    let (status, _, body) = send(req).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["code"],
        "parse_error"
    );
}

#[tokio::test]
async fn health_reports_version() {
    let (status, _, body) = send(get("/api/health")).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.len() < 1024);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v, json!({"status": "ok", "version": VERSION}));
}

#[tokio::test]
async fn static_routes() {
    for path in ["/", "/index.html"] {
        let (status, headers, body) = send(get(path)).await;
        assert_eq!(status, StatusCode::OK);
        assert!(headers[header::CONTENT_TYPE]
            .to_str()
            .unwrap()
            .starts_with("text/html"));
        assert!(String::from_utf8(body).unwrap().contains("/api/subdivide"));
    }
    assert_eq!(send(get("/nope")).await.0, StatusCode::NOT_FOUND);
    assert_eq!(
        send(get("/api/subdivide")).await.0,
        StatusCode::METHOD_NOT_ALLOWED
    );
    let (status, _, body) = send(get("/api/demo")).await;
    assert_eq!(status, StatusCode::OK);
    assert!(clothoid_hermite::parse_input(&body).is_ok());
}

#[tokio::test]
async fn static_dir_overrides_builtin_page() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>bundle</p>").unwrap();
    std::fs::write(dir.path().join("app.js"), "let x = 1;").unwrap();
    let app = || {
        router(ServiceConfig {
            static_dir: Some(dir.path().to_path_buf()),
        })
    };
    let res = app().oneshot(get("/")).await.unwrap();
    assert_eq!(res.status(), StatusCode::OK);
    let body = res.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&body[..], b"<p>bundle</p>");
    let res = app().oneshot(get("/app.js")).await.unwrap();
    assert_eq!(res.status(), StatusCode::OK);
    assert!(res.headers()[header::CONTENT_TYPE]
        .to_str()
        .unwrap()
        .contains("javascript"));
    let res = app().oneshot(get("/missing.css")).await.unwrap();
    assert_eq!(res.status(), StatusCode::NOT_FOUND);
    let res = app().oneshot(get("/api/health")).await.unwrap();
    assert_eq!(res.status(), StatusCode::OK);
}

#[tokio::test]
async fn cors_allows_localhost_only() {
    let preflight = |origin: &str| {
        Request::builder()
            .method(Method::OPTIONS)
            .uri("/api/subdivide")
            .header(header::ORIGIN, origin)
            .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
            .body(Body::empty())
            .unwrap()
    };
    let (_, headers, _) = send(preflight("http://localhost:5173")).await;
    assert_eq!(
        headers[header::ACCESS_CONTROL_ALLOW_ORIGIN],
        "http://localhost:5173"
    );
    let (_, headers, _) = send(preflight("https://example.com")).await;
    assert!(headers.get(header::ACCESS_CONTROL_ALLOW_ORIGIN).is_none());
}
