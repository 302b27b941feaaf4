pub struct GateParams { pub gamma: f64, pub omega: f64 }
