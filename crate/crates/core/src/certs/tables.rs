//! Dual certificate tables as rational literals.
//!
//! `DUALS_A` rows: `q y1..y10 bound`.
//! `DUALS_B1` rows: `p q y1..y5 y7..y16 bound` (the dual of row 6 is zero).
//! `DUALS_B2` rows: `p q y2..y9 y11..y16 bound` (duals of rows 1 and 10 are zero).

pub const DUALS_A: &str = "\
1 0 0 0 0 0 1/2 0 0 1/16 0 3/8\n\
2 1/6 0 0 0 0 2/3 0 0 1/12 0 1/2\n\
3 0 0 0 0 0 1/2 1/6 0 5/48 1/12 11/24\n\
4 0 0 1/12 0 0 1/2 1/6 0 5/48 1/30 11/24\n\
5 0 0 1/12 1/30 0 1/2 1/6 0 5/48 0 11/24\n\
6 0 0 1/12 1/30 1/42 1/2 1/6 1/126 3/28 0 29/63\n\
";

pub const DUALS_B1: &str = "\
1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 4/7 1/14 3/7\n\
1 2 1/6 0 0 0 0 0 0 0 1/12 0 0 0 0 7/12 0 1/2\n\
1 3 3/32 1/192 0 0 0 0 0 0 0 5/64 0 0 0 19/32 0 31/64\n\
1 4 1/10 1/30 1/20 0 0 0 0 0 0 1/10 0 0 0 3/5 0 1/2\n\
1 5 47/450 0 13/900 0 0 0 0 0 0 14/225 8/225 0 0 136/225 1/450 37/75\n\
1 6 3/28 0 5/252 17/1260 1/42 0 0 0 0 5/84 11/252 0 0 17/28 0 125/252\n\
1 7 7/64 0 37/2016 257/20160 1/42 0 0 0 0 11/192 179/4032 1/224 0 39/64 0 2003/4032\n\
1 8 1/9 0 13/756 23/1890 1/42 1/72 0 0 0 1/18 17/378 1/126 0 11/18 0 94/189\n\
1 9 9/80 0 41/2520 59/5040 1/42 1/40 1/90 0 0 13/240 229/5040 3/280 0 49/80 0 2509/5040\n\
1 10 5/44 0 43/2772 157/13860 1/42 3/88 2/99 1/110 0 7/132 127/2772 1/77 0 27/44 0 1381/2772\n\
2 2 0 0 0 0 0 0 0 0 1/12 0 0 0 1/12 1/6 0 1/2\n\
2 3 0 1/192 0 0 0 0 0 0 0 5/64 0 0 0 3/32 0 31/64\n\
2 4 0 1/30 1/20 0 0 0 0 0 0 1/10 0 0 0 1/10 0 1/2\n\
2 5 0 0 13/900 0 0 0 0 0 0 14/225 8/225 0 0 47/450 1/450 37/75\n\
2 6 0 0 5/252 17/1260 1/42 0 0 0 0 5/84 11/252 0 0 3/28 0 125/252\n\
2 7 0 0 37/2016 257/20160 1/42 0 0 0 0 11/192 179/4032 1/224 0 7/64 0 2003/4032\n\
2 8 0 0 13/756 23/1890 1/42 1/72 0 0 0 1/18 17/378 1/126 0 1/9 0 94/189\n\
2 9 0 0 41/2520 59/5040 1/42 1/40 1/90 0 0 13/240 229/5040 3/280 0 9/80 0 2509/5040\n\
2 10 0 0 43/2772 157/13860 1/42 3/88 2/99 1/110 0 7/132 127/2772 1/77 0 5/44 0 1381/2772\n\
";

pub const DUALS_B2: &str = "\
3 3 0 0 0 0 0 0 0 0 5/64 0 0 5/64 1/192 0 31/64\n\
3 4 0 1/20 0 0 0 0 0 0 1/10 0 0 1/10 1/30 0 1/2\n\
3 5 0 13/900 0 0 0 0 0 0 14/225 8/225 0 14/225 0 1/450 37/75\n\
3 6 0 5/252 17/1260 1/42 0 0 0 0 5/84 11/252 0 5/84 0 0 125/252\n\
3 7 0 37/2016 257/20160 1/42 0 0 0 0 11/192 179/4032 1/224 11/192 0 0 2003/4032\n\
3 8 0 13/756 23/1890 1/42 0 1/72 0 0 1/18 17/378 1/126 1/18 0 0 94/189\n\
3 9 0 41/2520 59/5040 1/42 0 1/40 1/90 0 13/240 229/5040 3/280 13/240 0 0 2509/5040\n\
3 10 0 43/2772 157/13860 1/42 0 3/88 2/99 1/110 7/132 127/2772 1/77 7/132 0 0 1381/2772\n\
4 4 1/10 0 0 0 0 0 0 0 1/10 0 0 1/5 1/20 0 1/2\n\
4 5 3/64 0 0 0 0 0 0 0 3/64 1/20 0 23/160 0 1/60 157/320\n\
4 6 5/112 0 1/280 1/42 0 0 0 0 5/112 3/56 0 1/7 0 0 55/112\n\
4 7 39/896 0 1/280 1/42 0 0 0 0 39/896 3/56 1/224 9/64 0 0 63/128\n\
4 8 43/1008 0 1/280 1/42 0 1/72 0 0 43/1008 3/56 1/126 5/36 0 0 71/144\n\
4 9 47/1120 0 1/280 1/42 0 1/40 1/90 0 47/1120 3/56 3/280 11/80 0 0 79/160\n\
4 10 51/1232 0 1/280 1/42 0 3/88 2/99 1/110 51/1232 3/56 1/77 3/22 0 0 87/176\n\
5 5 0 8/85 0 0 0 0 0 0 0 8/85 0 16/85 0 31/510 41/85\n\
5 6 0 8/85 0 31/510 0 0 0 0 0 8/85 0 16/85 0 22/595 41/85\n\
5 7 0 8/85 0 31/510 22/595 0 0 0 0 8/85 0 16/85 0 13/680 41/85\n\
5 8 0 8/85 0 31/510 22/595 13/680 0 0 0 8/85 0 16/85 0 4/765 41/85\n\
5 9 0 3/32 0 29/480 41/1120 1/40 1/90 0 0 3/32 1/640 3/16 0 0 309/640\n\
5 10 0 41/440 0 79/1320 111/3080 3/88 2/99 1/110 0 41/440 7/1760 41/220 0 0 851/1760\n\
";

/// SHA-256 over `DUALS_A ++ DUALS_B1 ++ DUALS_B2`.
pub const TABLES_SHA256: &str = "5cbf713655fc773f16acde2473f36d2a7d31c38509fb749b05adbe8c8d84a757";
