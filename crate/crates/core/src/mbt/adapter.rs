//! Connections from the tester to a system under test.

use std::collections::VecDeque;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::net::{TcpStream, ToSocketAddrs};
use std::process::{Child, Command as Process, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use super::protocol::{parse_response, Command, Response};
use crate::semantics::{Label, Plane, XRay};

/// Default observation window before the tester concludes quiescence.
pub const DEFAULT_OBSERVE_TIMEOUT: Duration = Duration::from_millis(500);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observation {
    Output(XRay, Plane),
    Quiescence,
}

impl Observation {
    pub fn label(self) -> Label {
        match self {
            Observation::Output(x, p) => Label::Output(x, p),
            Observation::Quiescence => Label::Delta,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AdapterError {
    #[error(transparent)]
    Protocol(#[from] super::protocol::ProtocolError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("system under test closed the connection")]
    Closed,
    #[error("system under test did not answer RESET within {0:?}")]
    ResetTimeout(Duration),
    #[error("system under test failed: {0}")]
    Sut(String),
}

pub trait Adapter {
    /// Returns the SUT to its initial state.
    fn reset(&mut self) -> Result<(), AdapterError>;
    fn stimulate(&mut self, action: &str) -> Result<(), AdapterError>;
    fn observe(&mut self) -> Result<Observation, AdapterError>;
}

impl<A: Adapter + ?Sized> Adapter for Box<A> {
    fn reset(&mut self) -> Result<(), AdapterError> {
        (**self).reset()
    }
    fn stimulate(&mut self, action: &str) -> Result<(), AdapterError> {
        (**self).stimulate(action)
    }
    fn observe(&mut self) -> Result<Observation, AdapterError> {
        (**self).observe()
    }
}

/// A system under test that answers each request line synchronously.
pub trait LineHandler {
    /// Returns the lines the SUT writes in response, or an error if it
    /// would abort the session.
    fn handle_line(&mut self, line: &str) -> Result<Vec<String>, String>;
}

/// In-process adapter. Quiescence is exact: it is reported as soon as the
/// handler has no pending output.
pub struct LocalAdapter<H> {
    handler: H,
    pending: VecDeque<String>,
}

impl<H: LineHandler> LocalAdapter<H> {
    pub fn new(handler: H) -> Self {
        LocalAdapter {
            handler,
            pending: VecDeque::new(),
        }
    }

    pub fn handler(&self) -> &H {
        &self.handler
    }

    fn send(&mut self, cmd: Command) -> Result<(), AdapterError> {
        let lines = self
            .handler
            .handle_line(&cmd.to_string())
            .map_err(AdapterError::Sut)?;
        self.pending.extend(lines);
        Ok(())
    }
}

impl<H: LineHandler> Adapter for LocalAdapter<H> {
    fn reset(&mut self) -> Result<(), AdapterError> {
        self.pending.clear();
        self.send(Command::Reset)?;
        while let Some(line) = self.pending.pop_front() {
            if parse_response(&line)? == Response::Ready {
                return Ok(());
            }
        }
        Err(AdapterError::ResetTimeout(Duration::ZERO))
    }

    fn stimulate(&mut self, action: &str) -> Result<(), AdapterError> {
        self.send(Command::In(action.to_string()))
    }

    fn observe(&mut self) -> Result<Observation, AdapterError> {
        match self.pending.pop_front() {
            None => Ok(Observation::Quiescence),
            Some(line) => match parse_response(&line)? {
                Response::Out(x, p) => Ok(Observation::Output(x, p)),
                Response::Ready => Err(super::protocol::ProtocolError(
                    "unexpected READY outside reset".into(),
                )
                .into()),
            },
        }
    }
}

/// Adapter over a byte stream. A reader thread forwards lines; silence for
/// the observation timeout counts as quiescence.
pub struct StreamAdapter {
    writer: Box<dyn Write + Send>,
    lines: Receiver<io::Result<String>>,
    timeout: Duration,
    reset_timeout: Duration,
    child: Option<Child>,
    socket: Option<TcpStream>,
}

impl StreamAdapter {
    pub fn new<R, W>(reader: R, writer: W, timeout: Duration) -> Self
    where
        R: Read + Send + 'static,
        W: Write + Send + 'static,
    {
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(reader).lines() {
                let stop = line.is_err();
                if tx.send(line).is_err() || stop {
                    break;
                }
            }
        });
        StreamAdapter {
            writer: Box::new(writer),
            lines: rx,
            timeout,
            reset_timeout: timeout.max(Duration::from_secs(5)),
            child: None,
            socket: None,
        }
    }

    pub fn connect(addr: impl ToSocketAddrs, timeout: Duration) -> io::Result<Self> {
        let stream = TcpStream::connect(addr)?;
        stream.set_nodelay(true)?;
        let reader = stream.try_clone()?;
        let socket = stream.try_clone()?;
        let mut adapter = Self::new(reader, stream, timeout);
        adapter.socket = Some(socket);
        Ok(adapter)
    }

    /// Launches `program args..` and talks to it over its stdin and stdout.
    pub fn spawn(program: &str, args: &[String], timeout: Duration) -> io::Result<Self> {
        let mut child = Process::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let mut adapter = Self::new(stdout, stdin, timeout);
        adapter.child = Some(child);
        Ok(adapter)
    }

    pub fn with_reset_timeout(mut self, timeout: Duration) -> Self {
        self.reset_timeout = timeout;
        self
    }

    fn send(&mut self, cmd: Command) -> Result<(), AdapterError> {
        writeln!(self.writer, "{cmd}")?;
        self.writer.flush()?;
        Ok(())
    }

    fn recv(&mut self, timeout: Duration) -> Result<Option<String>, AdapterError> {
        match self.lines.recv_timeout(timeout) {
            Ok(Ok(line)) => Ok(Some(line)),
            Ok(Err(e)) => Err(e.into()),
            Err(RecvTimeoutError::Timeout) => Ok(None),
            Err(RecvTimeoutError::Disconnected) => Err(AdapterError::Closed),
        }
    }
}

impl Adapter for StreamAdapter {
    fn reset(&mut self) -> Result<(), AdapterError> {
        // Late outputs from a previous session are dropped.
        while let Ok(Ok(_)) = self.lines.try_recv() {}
        self.send(Command::Reset)?;
        loop {
            match self.recv(self.reset_timeout)? {
                None => return Err(AdapterError::ResetTimeout(self.reset_timeout)),
                Some(line) => {
                    if parse_response(&line)? == Response::Ready {
                        return Ok(());
                    }
                }
            }
        }
    }

    fn stimulate(&mut self, action: &str) -> Result<(), AdapterError> {
        self.send(Command::In(action.to_string()))
    }

    fn observe(&mut self) -> Result<Observation, AdapterError> {
        match self.recv(self.timeout)? {
            None => Ok(Observation::Quiescence),
            Some(line) => match parse_response(&line)? {
                Response::Out(x, p) => Ok(Observation::Output(x, p)),
                Response::Ready => Err(super::protocol::ProtocolError(
                    "unexpected READY outside reset".into(),
                )
                .into()),
            },
        }
    }
}

impl Drop for StreamAdapter {
    fn drop(&mut self) {
        if let Some(socket) = &self.socket {
            let _ = socket.shutdown(std::net::Shutdown::Both);
        }
        if let Some(child) = &mut self.child {
            let _ = child.kill();
            let _ = child.wait();
        }
    }
}
