//! A singular invariant computed by a child process: one diagram JSON per
//! line on its stdin, one RingElem JSON per line on its stdout.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::SingularInvariant;
use crate::ring::RingElem;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

struct Session {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<String>>,
    answered: usize,
    dead: Option<String>,
}

pub struct ExternalInvariant {
    command: String,
    timeout: Duration,
    session: Mutex<Session>,
}

impl ExternalInvariant {
    /// Starts `command` under `sh -c`.
    pub fn spawn(command: &str, timeout: Duration) -> Result<Self> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| Error::Io(format!("cannot start {command:?}: {e}")))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(ExternalInvariant {
            command: command.to_string(),
            timeout,
            session: Mutex::new(Session {
                child,
                stdin,
                lines: rx,
                answered: 0,
                dead: None,
            }),
        })
    }
}

impl SingularInvariant for ExternalInvariant {
    fn name(&self) -> String {
        format!("external({})", self.command)
    }

    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        let mut s = self.session.lock().unwrap_or_else(|p| p.into_inner());
        if let Some(why) = &s.dead {
            return Err(Error::Eval(why.clone()));
        }
        let line_no = s.answered + 1;
        let sent = writeln!(s.stdin, "{}", d.to_json()).and_then(|_| s.stdin.flush());
        let reply = match sent {
            Ok(()) => s.lines.recv_timeout(self.timeout),
            Err(_) => Err(RecvTimeoutError::Disconnected),
        };
        match reply {
            Ok(Ok(line)) => {
                s.answered += 1;
                serde_json::from_str::<RingElem>(line.trim())
                    .map_err(|e| Error::Eval(format!("malformed output on line {line_no}: {e}: {line:?}")))
            }
            Ok(Err(e)) => {
                let why = format!("reading line {line_no} failed: {e}");
                s.dead = Some(why.clone());
                Err(Error::Eval(why))
            }
            Err(RecvTimeoutError::Timeout) => {
                let why = format!("no answer for line {line_no} within {} ms", self.timeout.as_millis());
                let _ = s.child.kill();
                s.dead = Some(why.clone());
                Err(Error::Eval(why))
            }
            Err(RecvTimeoutError::Disconnected) => {
                let why = format!("child exited after answering {} line(s)", s.answered);
                s.dead = Some(why.clone());
                Err(Error::Eval(why))
            }
        }
    }
}

impl Drop for ExternalInvariant {
    fn drop(&mut self) {
        let s = self.session.get_mut().unwrap_or_else(|p| p.into_inner());
        let _ = s.child.kill();
        let _ = s.child.wait();
    }
}
