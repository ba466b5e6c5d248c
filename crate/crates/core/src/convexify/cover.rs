use crate::geom::{canonical_rotation, polygon_area, ExactScalar, Point};

/// One convex polygon of a cover and the input ids it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverElement {
    /// Counterclockwise, starting at the lexicographically smallest vertex.
    /// One or two points for degenerate elements.
    pub vertices: Vec<Point>,
    /// Sorted input ids.
    pub ids: Vec<usize>,
}

impl CoverElement {
    pub fn new(vertices: Vec<Point>, mut ids: Vec<usize>) -> CoverElement {
        ids.sort_unstable();
        CoverElement { vertices: canonical_rotation(&vertices), ids }
    }

    pub fn area(&self) -> ExactScalar {
        polygon_area(&self.vertices)
    }
}

/// Disjoint convex polygons covering a set of inputs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cover {
    pub elements: Vec<CoverElement>,
    pub area: ExactScalar,
}

impl Cover {
    /// Elements are ordered by their smallest covered id.
    pub fn new(mut elements: Vec<CoverElement>) -> Cover {
        elements.sort_by(|a, b| a.ids.cmp(&b.ids));
        let area = elements.iter().map(CoverElement::area).sum();
        Cover { elements, area }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
