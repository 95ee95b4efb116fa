/// Residual network with paired arcs: arc `a` and `a ^ 1` are reverses of
/// each other, and the residual capacity of the reverse arc is the flow on
/// the forward one.
#[derive(Debug, Clone, Default)]
pub struct ResidualGraph {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl ResidualGraph {
    pub fn new(n: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of arcs, counting both directions.
    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    /// Adds `u -> v` with capacity `cap`; returns the forward arc id.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    pub fn head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.head[arc ^ 1]
    }

    pub fn residual(&self, arc: usize) -> i64 {
        self.cap[arc]
    }

    /// Flow carried by a forward arc.
    pub fn flow(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    pub fn out_arcs(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn push(&mut self, arc: usize, amount: i64) {
        debug_assert!(amount <= self.cap[arc], "push exceeds residual capacity");
        self.cap[arc] -= amount;
        self.cap[arc ^ 1] += amount;
    }

    pub fn is_forward(arc: usize) -> bool {
        arc & 1 == 0
    }
}
