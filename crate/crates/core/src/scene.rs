//! Line-oriented scene file format.
//!
//! ```text
//! # comment
//! framebuffer W H
//! spacing S            (optional, default 1)
//! texture PATH         (optional)
//! tri
//! v x y w u v r g b
//! v x y w u v r g b
//! v x y w u v r g b
//! ```
//!
//! `#` starts a comment anywhere on a line. Unknown directives are errors.
//! Every vertex must carry a positive eye-space depth and attribute values in
//! [0, 1].

use crate::error::Error;
use crate::triangle::Vertex;

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub width: usize,
    pub height: usize,
    pub spacing: f64,
    pub texture: Option<String>,
    pub triangles: Vec<[Vertex; 3]>,
}

impl Scene {
    /// Serializes back to the text format; the result re-parses to an equal
    /// scene (f64 formatting round-trips exactly).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("framebuffer {} {}\n", self.width, self.height));
        out.push_str(&format!("spacing {}\n", self.spacing));
        if let Some(path) = &self.texture {
            out.push_str(&format!("texture {path}\n"));
        }
        for tri in &self.triangles {
            out.push_str("tri\n");
            for v in tri {
                out.push_str(&format!(
                    "v {} {} {} {} {} {} {} {}\n",
                    v.x, v.y, v.w, v.u, v.v, v.r, v.g, v.b
                ));
            }
        }
        out
    }
}

pub fn parse_scene(text: &str) -> Result<Scene, Error> {
    let mut dims: Option<(usize, usize)> = None;
    let mut spacing = 1.0f64;
    let mut texture: Option<String> = None;
    let mut triangles: Vec<[Vertex; 3]> = Vec::new();
    let mut pending: Option<Vec<Vertex>> = None;

    let syntax = |line: usize, message: &str| Error::SceneSyntax { line, message: message.into() };
    let semantic =
        |line: usize, message: String| Error::SceneSemantic { line, message };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = line.split_whitespace();
        let Some(directive) = tokens.next() else { continue };

        match directive {
            "framebuffer" => {
                if dims.is_some() {
                    return Err(syntax(line_no, "duplicate framebuffer directive"));
                }
                let w = parse_num::<usize>(tokens.next(), line_no, "framebuffer width")?;
                let h = parse_num::<usize>(tokens.next(), line_no, "framebuffer height")?;
                expect_end(tokens.next(), line_no)?;
                if w < 1 || h < 1 {
                    return Err(semantic(
                        line_no,
                        format!("framebuffer dimensions must be at least 1x1, got {w}x{h}"),
                    ));
                }
                dims = Some((w, h));
            }
            "spacing" => {
                let s = parse_num::<f64>(tokens.next(), line_no, "spacing")?;
                expect_end(tokens.next(), line_no)?;
                if s <= 0.0 || s.is_nan() {
                    return Err(semantic(line_no, format!("spacing must be positive, got {s}")));
                }
                spacing = s;
            }
            "texture" => {
                let rest = line.trim_start();
                let path = rest["texture".len()..].trim();
                if path.is_empty() {
                    return Err(syntax(line_no, "texture directive needs a path"));
                }
                texture = Some(path.to_string());
            }
            "tri" => {
                expect_end(tokens.next(), line_no)?;
                if pending.is_some() {
                    return Err(syntax(line_no, "tri before the previous triangle's 3 vertices"));
                }
                pending = Some(Vec::new());
            }
            "v" => {
                let Some(verts) = pending.as_mut() else {
                    return Err(syntax(line_no, "vertex line outside a tri block"));
                };
                let mut field = |name: &str| parse_num::<f64>(tokens.next(), line_no, name);
                let vertex = Vertex::new(
                    field("x")?,
                    field("y")?,
                    field("w")?,
                    field("u")?,
                    field("v")?,
                    field("r")?,
                    field("g")?,
                    field("b")?,
                );
                expect_end(tokens.next(), line_no)?;
                if vertex.w <= 0.0 || vertex.w.is_nan() {
                    return Err(semantic(
                        line_no,
                        format!("vertex w must be positive, got {}", vertex.w),
                    ));
                }
                for (name, value) in [
                    ("u", vertex.u),
                    ("v", vertex.v),
                    ("r", vertex.r),
                    ("g", vertex.g),
                    ("b", vertex.b),
                ] {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(semantic(
                            line_no,
                            format!("vertex {name} must be in [0, 1], got {value}"),
                        ));
                    }
                }
                verts.push(vertex);
                if verts.len() == 3 {
                    let done = pending.take().unwrap();
                    triangles.push([done[0], done[1], done[2]]);
                }
            }
            other => {
                return Err(syntax(line_no, &format!("unknown directive '{other}'")));
            }
        }
    }

    if pending.is_some() {
        return Err(syntax(0, "file ends inside a tri block"));
    }
    let Some((width, height)) = dims else {
        return Err(syntax(0, "missing framebuffer directive"));
    };
    Ok(Scene { width, height, spacing, texture, triangles })
}

fn parse_num<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, Error> {
    let token = token.ok_or_else(|| Error::SceneSyntax {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::SceneSyntax {
        line,
        message: format!("cannot parse {what} from '{token}'"),
    })
}

fn expect_end(token: Option<&str>, line: usize) -> Result<(), Error> {
    match token {
        None => Ok(()),
        Some(extra) => Err(Error::SceneSyntax {
            line,
            message: format!("unexpected trailing token '{extra}'"),
        }),
    }
}
