//! Bessel values computed offline with mpmath at 50 significant digits.

// (n, re z, im z, Re J, Im J, Re Y, Im Y)
pub const CYL: &[(usize, f64, f64, f64, f64, f64, f64)] = &[
    (0, 0.1, 0.0, 0.99750156206604, 0.0, -1.5342386513503667, 0.0),
    (1, 0.1, 0.0, 0.049937526036242, 0.0, -6.4589510947020266, 0.0),
    (2, 0.1, 0.0, 0.001248958658799919, 0.0, -127.64478324269015, 0.0),
    (7, 0.1, 0.0, 1.549614867620228e-13, 0.0, -293476652667.3925, 0.0),
    (20, 0.1, 0.0, 3.919437720858622e-45, 0.0, -4.060708420126368e+42, 0.0),
    (50, 0.1, 0.0, 2.9201425690996437e-130, 0.0, -2.180102618471604e+127, 0.0),
    (0, 1.0, 0.0, 0.7651976865579666, 0.0, 0.08825696421567696, 0.0),
    (1, 1.0, 0.0, 0.4400505857449335, 0.0, -0.7812128213002887, 0.0),
    (2, 1.0, 0.0, 0.11490348493190047, 0.0, -1.6506826068162543, 0.0),
    (7, 1.0, 0.0, 1.5023258174368083e-06, 0.0, -30588.957052123988, 0.0),
    (20, 1.0, 0.0, 3.8735030085246576e-25, 0.0, -4.113970314835505e+22, 0.0),
    (50, 1.0, 0.0, 2.9060049481732392e-80, 0.0, -2.191142812605339e+77, 0.0),
    (0, 7.3, 0.0, 0.2882169476350144, 0.0, 0.0627738863740376, 0.0),
    (1, 7.3, 0.0, 0.08257043049325784, 0.0, -0.2845943718680721, 0.0),
    (2, 7.3, 0.0, -0.2655949118834369, 0.0, -0.14074494715981078, 0.0),
    (7, 7.3, 0.0, 0.26430025130148604, 0.0, -0.34437763280869177, 0.0),
    (20, 7.3, 0.0, 3.802662846686591e-08, 0.0, -449671.02019076765, 0.0),
    (50, 7.3, 0.0, 3.2948277320896557e-37, 0.0, -1.9531165169428258e+34, 0.0),
    (0, 30.0, 0.0, -0.08636798358104021, 0.0, -0.11729573168666403, 0.0),
    (1, 30.0, 0.0, -0.11875106261662294, 0.0, 0.08442557066174723, 0.0),
    (2, 30.0, 0.0, 0.07845124607326535, 0.0, 0.12292410306411385, 0.0),
    (7, 30.0, 0.0, 0.1451851895723283, 0.0, 0.02720211839520559, 0.0),
    (20, 30.0, 0.0, 0.0048310199934040645, 0.0, -0.16848153948742678, 0.0),
    (50, 30.0, 0.0, 2.0581656631564178e-08, 0.0, -386759.32602734736, 0.0),
    (0, 120.0, 0.0, 0.07182341582915613, 0.0, -0.012104365410016202, 0.0),
    (1, 120.0, 0.0, -0.01180521143300189, 0.0, -0.07187447320914954, 0.0),
    (2, 120.0, 0.0, -0.0720201693530395, 0.0, 0.010906457523197044, 0.0),
    (7, 120.0, 0.0, -0.002715292313899294, 0.0, 0.07284774515254938, 0.0),
    (20, 120.0, 0.0, 0.0049302157286156235, 0.0, 0.07318507774361216, 0.0),
    (50, 120.0, 0.0, 0.04232026344022007, 0.0, 0.06359816959170296, 0.0),
    (0, 2.0, 0.5, 0.21560017471888615, -0.2967860645031962, 0.5812933380326025, 0.04939695603690462),
    (1, 2.0, 0.5, 0.6276041396964503, -0.034096823134403174, -0.08262623443675966, 0.28550814908228667),
    (2, 2.0, 0.5, 0.3670632924932075, 0.11702337456576963, -0.5918808177184265, 0.23875806296683802),
    (7, 2.0, 0.5, -1.758384777549324e-05, 0.00021735646999247133, 12.56538524501094, 216.7319796477189),
    (20, 2.0, 0.5, 1.1718878133241695e-19, -7.111219724361748e-19, -3552282368683561.5, -2.190113485415233e+16),
    (50, 2.0, 0.5, 1.391498726797295e-64, -4.723433607393768e-65, -4.104888645653551e+61, -1.3952367399970373e+61),
    (0, 15.0, 3.0, -0.3429552398420873, -2.017553729773522, 2.0276874711240143, -0.34325081644261235),
    (1, 15.0, 3.0, 2.0047358030040585, -0.40624621267347666, 0.40627105332675595, 1.9945229184589384),
    (2, 15.0, 3.0, 0.5895560809279031, 1.914067399866562, -1.924459825352406, 0.5885416764161492),
    (7, 15.0, 3.0, 0.32820497315056474, 1.5141061649060805, -1.5289276900447983, 0.32869756452418936),
    (20, 15.0, 3.0, -0.011753511818644348, 0.005316559499363592, 1.3563313581850611, 1.0401949563725976),
    (50, 15.0, 3.0, -1.7062612774605213e-21, 9.406857528612049e-24, 3.9007921681614505e+18, 9.838971498903787e+16),
    (0, 0.5, -0.2, 0.9475709328407379, 0.048695507396165065, -0.39815469980813656, -0.28290587904949227),
    (1, 0.5, -0.2, 0.24589971874137143, -0.0912361818905322, -1.3110655656032997, -0.4310447516359554),
    (2, 0.5, -0.2, 0.02620214128886319, -0.024131005306453457, -3.528216558636406, -3.0118216308721464),
    (7, 0.5, -0.2, -1.7899691474223286e-08, -9.416882373404457e-09, 1991882.278487539, -1053242.868181447),
    (20, 0.5, -0.2, 4.00979771065427e-31, -1.5953957614603363e-30, -2.3612966036399276e+27, -9.385038459360518e+27),
    (50, 0.5, -0.2, 1.0429429552796184e-93, -1.8416740346582034e-94, -5.91977972977599e+90, -1.045096162204827e+90),
];
pub const SPH: &[(usize, f64, f64, f64, f64, f64, f64)] = &[
    (0, 0.1, 0.0, 0.9983341664682815, 0.0, -9.950041652780257, 0.0),
    (1, 0.1, 0.0, 0.033300011902557575, 0.0, -100.49875069427085, 0.0),
    (2, 0.1, 0.0, 0.0006661906084455688, 0.0, -3005.012479175345, 0.0),
    (7, 0.1, 0.0, 4.931887475731975e-14, 0.0, -13518698681468.783, 0.0),
    (20, 0.1, 0.0, 7.62509231240908e-46, 0.0, -3.198719935162112e+44, 0.0),
    (50, 0.1, 0.0, 3.6326917273532346e-131, 0.0, -2.7255297893660274e+129, 0.0),
    (0, 1.0, 0.0, 0.8414709848078965, 0.0, -0.5403023058681398, 0.0),
    (1, 1.0, 0.0, 0.3011686789397568, 0.0, -1.3817732906760363, 0.0),
    (2, 1.0, 0.0, 0.06203505201137386, 0.0, -3.605017566159969, 0.0),
    (7, 1.0, 0.0, 4.790134198739489e-07, 0.0, -140452.8523669064, 0.0),
    (20, 1.0, 0.0, 7.537795722236873e-26, 0.0, -3.239592218578984e+23, 0.0),
    (50, 1.0, 0.0, 3.615274717489787e-81, 0.0, -2.7391922846297573e+78, 0.0),
    (0, 7.3, 0.0, 0.11649816720939239, 0.0, -0.07206541333987744, 0.0),
    (1, 7.3, 0.0, -0.05610676029749492, 0.0, -0.1263701416395126, 0.0),
    (2, 7.3, 0.0, -0.1395557399343903, 0.0, 0.020132478419529806, 0.0),
    (7, 7.3, 0.0, 0.09642530274520351, 0.0, -0.20228111148965405, 0.0),
    (20, 7.3, 0.0, 7.512754126907013e-09, 0.0, -476037.2633582643, 0.0),
    (50, 7.3, 0.0, 4.109289109607482e-38, 0.0, -3.335619936342832e+34, 0.0),
    (0, 30.0, 0.0, -0.03293438746976206, 2.3182538441796384e-69, -0.005141714996252802, -9.432999040444492e-75),
    (1, 30.0, 0.0, -0.006239527911911537, -1.7386903831347288e-68, 0.032762996969886965, 0.0),
    (2, 30.0, 0.0, 0.03231043467857091, 0.0, 0.008418014693241499, 0.0),
    (7, 30.0, 0.0, 0.03007196167312458, 0.0, -0.015588037082363428, 1.4820090491781792e-74),
    (20, 30.0, 0.0, -0.014711593353429088, 2.0404995105089124e-68, -0.03607803360661389, -8.573620792371278e-75),
    (50, 30.0, 0.0, 2.6901637185735318e-09, 0.0, -152551.5723315769, -6.659122253381619e-69),
    (0, 120.0, 0.0, 0.004838426535102619, 0.0, -0.006784841421054681, 9.211913125434074e-78),
    (1, 120.0, 0.0, -0.006744521199928826, 0.0, -0.004894966880278075, -9.82604066712968e-78),
    (2, 120.0, 0.0, -0.00500703956510084, 0.0, 0.0066624672490477295, -1.0481110044938324e-77),
    (7, 120.0, 0.0, 0.0054871476336563925, 0.0, 0.006282600339925753, 7.236372310440328e-78),
    (20, 120.0, 0.0, 0.005831454004074524, 0.0, 0.0060393633602914875, 0.0),
    (50, 120.0, 0.0, 0.008009248284490659, 0.0, 0.0035218246232915267, 0.0),
    (0, 2.0, 0.5, 0.457004398990019, -0.2226771812078996, 0.27657206274501417, 0.16777229452194994),
    (1, 2.0, 0.5, 0.4654356409511526, 0.009217809366465553, -0.3071149230486064, 0.2690909594835214),
    (2, 2.0, 0.5, 0.20333455624683133, 0.07141915644838535, -0.6151727919370981, 0.3205143270013532),
    (7, 2.0, 0.5, -5.90091961394401e-06, 6.96384226808031e-05, 146.14298066219553, 456.2839927419963),
    (20, 2.0, 0.5, 2.2899357596116503e-20, -1.384765182057999e-19, -3.3475234559499184e+16, -7.777288531679744e+16),
    (50, 2.0, 0.5, 1.7314050421302723e-65, -5.87540367002236e-66, -2.619725443119743e+62, -2.167871829759955e+61),
    (0, 15.0, 3.0, 0.32210169715956816, -0.5717842390908966, 0.5737936909514353, 0.31954141177701423),
    (1, 15.0, 3.0, 0.5871106684733192, 0.278759066999911, -0.28122336553733496, 0.5849113335515842),
    (2, 15.0, 3.0, -0.19847429679931788, 0.6028105724188287, -0.6053785176489387, -0.19624217972719668),
    (7, 15.0, 3.0, -0.11048033344065915, 0.4632022476125272, -0.4671189827846091, -0.10729850835262492),
    (20, 15.0, 3.0, -0.002489870341976564, 0.0010157584671954963, 0.746890063874687, 0.3156646209627026),
    (50, 15.0, 3.0, -2.145133817306161e-22, 2.0494736236846676e-25, 3.1033467423987256e+18, -5.556128661512337e+17),
    (0, 0.5, -0.2, 0.965037309809016, 0.03263699410204671, -1.4768664622619256, -0.7837978278221326),
    (1, 0.5, -0.2, 0.16448269664875945, -0.06198417605376515, -2.970808570383279, -2.402541153976017),
    (2, 0.5, -0.2, 0.013978381933736623, -0.012935773727536517, -8.918609962528793, -17.789639665950258),
    (7, 0.5, -0.2, -5.700051002688189e-09, -2.9960701236764862e-09, 19154646.73947395, -2023412.2933613143),
    (20, 0.5, -0.2, 7.799596367248943e-32, -3.1039867923184154e-31, 1.8923346220281777e+28, -1.4027970985677384e+29),
    (50, 0.5, -0.2, 1.2974434808934426e-94, -2.2912094866084076e-95, -1.1858749960639972e+92, -7.356750984293459e+91),
];
pub const DD_J0_4_5: (f64, f64) = (-0.32054250898512143, 8.285363430718461e-18);
pub const DD_Y0_1EM4: (f64, f64) = (-5.937289069709337, -2.0002053697412587e-16);
pub const DD_Y1_7_25: (f64, f64) = (-0.28934799419758706, 9.785063572541671e-18);
pub const DD_J3_50: (f64, f64) = (0.09273480406163444, -5.6568571377878665e-18);
pub const DD_SPH_Y2_0_375: (f64, f64) = (-58.26800500863672, -2.597211266433656e-15);
pub const DD_SPH_J5_3_5: (f64, f64) = (0.03104153653739119, -4.579993635623883e-19);
