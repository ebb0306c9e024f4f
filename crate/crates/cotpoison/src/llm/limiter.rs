use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Token-bucket rate limiter; `acquire` blocks until a token is available.
pub struct RateLimiter {
    state: Mutex<BucketState>,
    per_second: f64,
    burst: f64,
}

struct BucketState {
    tokens: f64,
    last_refill: Instant,
}

impl RateLimiter {
    pub fn new(per_second: f64, burst: f64) -> Self {
        assert!(per_second > 0.0 && burst >= 1.0);
        RateLimiter {
            state: Mutex::new(BucketState {
                tokens: burst,
                last_refill: Instant::now(),
            }),
            per_second,
            burst,
        }
    }

    pub fn acquire(&self) {
        loop {
            let wait = {
                let mut state = self.state.lock().unwrap();
                let now = Instant::now();
                let elapsed = now.duration_since(state.last_refill).as_secs_f64();
                state.tokens = (state.tokens + elapsed * self.per_second).min(self.burst);
                state.last_refill = now;
                if state.tokens >= 1.0 {
                    state.tokens -= 1.0;
                    return;
                }
                Duration::from_secs_f64((1.0 - state.tokens) / self.per_second)
            };
            std::thread::sleep(wait);
        }
    }
}
