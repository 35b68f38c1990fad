use std::net::SocketAddr;

use pentamap_core::conformal::build_quad;
use pentamap_core::conformal::field::solve_on_grid;
use pentamap_service::{router, AppState};

/// Starts a server on an ephemeral port with a coarse field.
pub async fn spawn_server() -> SocketAddr {
    let field = solve_on_grid(&build_quad(), 40, 0.02).expect("field");
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.expect("bind");
    let addr = listener.local_addr().expect("addr");
    tokio::spawn(async move {
        axum::serve(listener, router(AppState::new(field))).await.expect("serve");
    });
    addr
}
