use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schemes::Frame;

/// Header row plus one record per item.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct FramePoint {
    t: f64,
    x: f64,
    u: f64,
}

/// Long format `t,x,u`, frames in time order.
pub fn write_frames<W: Write>(frames: &[Frame], dx: f64, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for frame in frames {
        for (j, &u) in frame.u.iter().enumerate() {
            writer.serialize(FramePoint { t: frame.t, x: j as f64 * dx, u })?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Inverse of [`write_frames`]; step indices are recovered as `round(t/dt)`.
pub fn read_frames<R: Read>(input: R, dt: f64) -> Result<Vec<Frame>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut frames: Vec<Frame> = Vec::new();
    for record in reader.deserialize() {
        let point: FramePoint = record?;
        match frames.last_mut() {
            Some(frame) if frame.t == point.t => frame.u.push(point.u),
            _ => frames.push(Frame { step: (point.t / dt).round() as usize, t: point.t, u: vec![point.u] }),
        }
    }
    let nodes = frames.first().map(|f| f.u.len()).unwrap_or(0);
    if frames.iter().any(|f| f.u.len() != nodes) {
        return Err(Error::InvalidConfig("frames have differing node counts".into()));
    }
    if frames.windows(2).any(|w| w[1].t <= w[0].t) {
        return Err(Error::InvalidConfig("frames are not in increasing time order".into()));
    }
    Ok(frames)
}

#[derive(Serialize)]
struct StatePoint {
    x: f64,
    u: f64,
}

/// Single profile as `x,u`.
pub fn write_state<W: Write>(u: &[f64], dx: f64, out: W) -> Result<()> {
    let rows: Vec<StatePoint> = u.iter().enumerate().map(|(j, &u)| StatePoint { x: j as f64 * dx, u }).collect();
    write_csv(&rows, out)
}
