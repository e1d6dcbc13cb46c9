use sha2::{Digest, Sha256};

/// Running SHA-256 over output texts, shown as 16 hex digits.
#[derive(Clone, Default)]
pub struct Checksum(Sha256);

impl Checksum {
    pub fn new() -> Self {
        Checksum(Sha256::new())
    }

    pub fn add(&mut self, text: &str) {
        self.0.update(text.as_bytes());
        self.0.update([0u8]);
    }

    pub fn finish(self) -> String {
        self.0.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub fn of(text: &str) -> String {
    let mut c = Checksum::new();
    c.add(text);
    c.finish()
}
