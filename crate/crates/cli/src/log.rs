//! The run log. Every line goes through one sink so concurrent work cannot interleave.

use std::io::{self, Write};

pub struct Log {
    sink: Box<dyn Write>,
}

impl Log {
    pub fn stdout() -> Self {
        Log { sink: Box::new(io::stdout()) }
    }

    pub fn line(&mut self, text: &str) {
        // A closed stdout must not abort a run that is writing files.
        let _ = writeln!(self.sink, "{text}");
    }
}
