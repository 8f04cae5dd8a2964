"""Frozen reference values.

Mittag-Leffler values: mpmath (40 digits), Talbot inversion of
``s**(alpha-beta) / (s**alpha + x)`` at ``t = 1`` for negative arguments and
the power series for positive ones.

Stiffness entries: adaptive double quadrature of the bilinear form for
``N = 8``, split over element pairs (diagonal pairs into triangles), plus the
exterior part through the closed-form inner integral.
"""

ML_ORACLE = [  # (alpha, beta, z, value)
    (0.1, 1.0, -0.5, 0.654324460288002),
    (0.1, 1.0, -3.0, 0.23855934978253857),
    (0.1, 1.0, -20.0, 0.04473386400745096),
    (0.1, 1.0, -150.0, 0.0062005767700984175),
    (0.1, 1.0, -1000.0, 0.0009349205536058907),
    (0.1, 1.0, -100000.0, 9.357701316197182e-06),
    (0.1, 1.0, 0.5, 2.0770042471194152),
    (0.1, 0.1, -0.5, 0.04539794028229867),
    (0.1, 0.1, -3.0, 0.00607454077992214),
    (0.1, 0.1, -20.0, 0.00021383599031220908),
    (0.1, 0.1, -150.0, 4.108569576711737e-06),
    (0.1, 0.1, -1000.0, 9.340631553407734e-08),
    (0.1, 0.1, -100000.0, 9.357615424036006e-12),
    (0.1, 0.1, 0.5, 0.43665345237723885),
    (0.1, 1.1, -0.5, 0.6913510794239961),
    (0.1, 1.1, -3.0, 0.2538135500724871),
    (0.1, 1.1, -20.0, 0.04776330679962745),
    (0.1, 1.1, -150.0, 0.006625329488199344),
    (0.1, 1.1, -1000.0, 0.000999065079446394),
    (0.1, 1.1, -100000.0, 9.999906422986838e-06),
    (0.1, 1.1, 0.5, 2.1540084942388305),
    (0.1, 1.2, -0.5, 0.7195718533755633),
    (0.1, 1.2, -3.0, 0.2657744853464302),
    (0.1, 1.2, -20.0, 0.050168684965607516),
    (0.1, 1.2, -150.0, 0.006963411177490522),
    (0.1, 1.2, -1000.0, 0.0010501379410323313),
    (0.1, 1.2, -100000.0, 1.0511270062053547e-05),
    (0.1, 1.2, 0.5, 2.205742976254105),
    (0.1, 0.5, -0.5, 0.3517042965633322),
    (0.1, 0.5, -3.0, 0.11997819874043371),
    (0.1, 0.5, -20.0, 0.021732100564682656),
    (0.1, 0.5, -150.0, 0.002990702427597991),
    (0.1, 0.5, -1000.0, 0.0004504901441616175),
    (0.1, 0.5, -100000.0, 4.508208564886678e-06),
    (0.1, 0.5, 0.5, 1.3232975459180543),
    (0.3, 1.0, -0.5, 0.632649005943599),
    (0.3, 1.0, -3.0, 0.21180263319643577),
    (0.3, 1.0, -20.0, 0.03740622621388445),
    (0.3, 1.0, -150.0, 0.005115882741802319),
    (0.3, 1.0, -1000.0, 0.0007699324649525776),
    (0.3, 1.0, -100000.0, 7.703786756350856e-06),
    (0.3, 1.0, 0.5, 2.0620157899559994),
    (0.3, 1.0, 1.7, 1172.6853642132423),
    (0.3, 0.3, -0.5, 0.14375650014722127),
    (0.3, 0.3, -3.0, 0.017243316421744134),
    (0.3, 0.3, -20.0, 0.000544624898044652),
    (0.3, 0.3, -150.0, 1.0191818807088668e-05),
    (0.3, 0.3, -1000.0, 2.3084455544850575e-07),
    (0.3, 0.3, -100000.0, 2.3111225022423507e-11),
    (0.3, 0.3, 0.5, 1.1694769581219358),
    (0.3, 0.3, 1.7, 4046.944169407694),
    (0.3, 1.3, -0.5, 0.734701988112802),
    (0.3, 1.3, -3.0, 0.2627324556011881),
    (0.3, 1.3, -20.0, 0.048129688689305776),
    (0.3, 1.3, -150.0, 0.006632560781721318),
    (0.3, 1.3, -1000.0, 0.0009992300675350475),
    (0.3, 1.3, -100000.0, 9.999922962132437e-06),
    (0.3, 1.3, 0.5, 2.124031579911999),
    (0.3, 1.3, 1.7, 689.226684831319),
    (0.3, 1.6, -0.5, 0.7590810408689997),
    (0.3, 1.6, -3.0, 0.28383668431537123),
    (0.3, 1.6, -20.0, 0.053305640992899805),
    (0.3, 1.6, -150.0, 0.007384066318437204),
    (0.3, 1.6, -1000.0, 0.001113243278479767),
    (0.3, 1.6, -100000.0, 1.1142325086243397e-05),
    (0.3, 1.6, 0.5, 2.019578142729394),
    (0.3, 1.6, 1.7, 404.772024895748),
    (0.3, 0.5, -0.5, 0.30363310176042707),
    (0.3, 0.5, -3.0, 0.07569461643574946),
    (0.3, 0.5, -20.0, 0.011093071721269413),
    (0.3, 0.5, -150.0, 0.0014562457876855029),
    (0.3, 0.5, -1000.0, 0.0002179181937157602),
    (0.3, 0.5, -100000.0, 2.1782581996352824e-06),
    (0.3, 0.5, 0.5, 1.5196111396142773),
    (0.3, 0.5, 1.7, 2841.0392856007793),
    (0.5, 1.0, -0.5, 0.6156903441929259),
    (0.5, 1.0, -3.0, 0.17900115118138996),
    (0.5, 1.0, -20.0, 0.02817434874105132),
    (0.5, 1.0, -150.0, 0.003761180312247992),
    (0.5, 1.0, -1000.0, 0.0005641893014533876),
    (0.5, 1.0, -100000.0, 5.6418958351954685e-06),
    (0.5, 1.0, 0.5, 1.952360489182557),
    (0.5, 1.0, 1.7, 35.69495590602528),
    (0.5, 0.5, -0.5, 0.25634441145129333),
    (0.5, 0.5, -3.0, 0.027186130003586436),
    (0.5, 0.5, -20.0, 0.0007026087267299006),
    (0.5, 0.5, -150.0, 1.253671055749745e-05),
    (0.5, 0.5, -1000.0, 2.8209436863274835e-07),
    (0.5, 0.5, -100000.0, 2.820947917315639e-11),
    (0.5, 0.5, 0.5, 1.5403698281390348),
    (0.5, 0.5, 1.7, 61.24561462379073),
    (0.5, 1.5, -0.5, 0.7686193116141482),
    (0.5, 1.5, -3.0, 0.2736662829395367),
    (0.5, 1.5, -20.0, 0.04859128256294743),
    (0.5, 1.5, -150.0, 0.00664159213125168),
    (0.5, 1.5, -1000.0, 0.0009994358106985466),
    (0.5, 1.5, -100000.0, 9.999943581041649e-06),
    (0.5, 1.5, 0.5, 1.9047209783651142),
    (0.5, 1.5, 1.7, 20.408797591779578),
    (0.5, 2.0, -0.5, 0.7195197109627286),
    (0.5, 2.0, -3.0, 0.28490429471865863),
    (0.5, 2.0, -20.0, 0.053989394226628254),
    (0.5, 2.0, -150.0, 0.0074782504997617395),
    (0.5, 2.0, -1000.0, 0.001127379731284814),
    (0.5, 2.0, -100000.0, 1.1283691671519315e-05),
    (0.5, 2.0, 0.5, 1.5526836225392033),
    (0.5, 2.0, 1.7, 11.341422602755333),
    (0.5, 0.5, -0.5, 0.25634441145129333),
    (0.5, 0.5, -3.0, 0.027186130003586436),
    (0.5, 0.5, -20.0, 0.0007026087267299006),
    (0.5, 0.5, -150.0, 1.253671055749745e-05),
    (0.5, 0.5, -1000.0, 2.8209436863274835e-07),
    (0.5, 0.5, -100000.0, 2.820947917315639e-11),
    (0.5, 0.5, 0.5, 1.5403698281390348),
    (0.5, 0.5, 1.7, 61.24561462379073),
    (0.8, 1.0, -0.5, 0.6030237158628037),
    (0.8, 1.0, -3.0, 0.1129201986822174),
    (0.8, 1.0, -20.0, 0.011617250451432777),
    (0.8, 1.0, -150.0, 0.001464300189009254),
    (0.8, 1.0, -1000.0, 0.00021809575522748381),
    (0.8, 1.0, -100000.0, 2.178275891944671e-06),
    (0.8, 1.0, 0.5, 1.763203674366713),
    (0.8, 1.0, 1.7, 8.632025653636058),
    (0.8, 0.8, -0.5, 0.4579314981011144),
    (0.8, 0.8, -3.0, 0.03991566425159709),
    (0.8, 0.8, -20.0, 0.0004958252095920867),
    (0.8, 0.8, -150.0, 7.874921033648583e-06),
    (0.8, 0.8, -1000.0, 1.7469360255448725e-07),
    (0.8, 0.8, -100000.0, 1.7426423537189777e-11),
    (0.8, 0.8, 0.5, 1.6838126780364375),
    (0.8, 0.8, 1.7, 9.966244519870228),
    (0.8, 1.8, -0.5, 0.7939525682743926),
    (0.8, 1.8, -3.0, 0.2956932671059275),
    (0.8, 1.8, -20.0, 0.04941913747742836),
    (0.8, 1.8, -150.0, 0.006656904665406605),
    (0.8, 1.8, -1000.0, 0.0009997819042447725),
    (0.8, 1.8, -100000.0, 9.99997821724108e-06),
    (0.8, 1.8, 0.5, 1.526407348733426),
    (0.8, 1.8, 1.7, 4.489426855080034),
    (0.8, 2.6, -0.5, 0.5594374115128834),
    (0.8, 2.6, -3.0, 0.2593260023083023),
    (0.8, 2.6, -20.0, 0.051212606827670294),
    (0.8, 2.6, -150.0, 0.007113429129102852),
    (0.8, 2.6, -1000.0, 0.0010726714921265896),
    (0.8, 2.6, -100000.0, 1.073661274052617e-05),
    (0.8, 2.6, 0.5, 0.9054721494051835),
    (0.8, 2.6, 1.7, 2.0092679888524705),
    (0.8, 0.5, -0.5, 0.19021867180089233),
    (0.8, 0.5, -3.0, -0.0617319070688422),
    (0.8, 0.5, -20.0, -0.011782589271326563),
    (0.8, 0.5, -150.0, -0.001545285857172276),
    (0.8, 0.5, -1000.0, -0.00023121770999711154),
    (0.8, 0.5, -100000.0, -2.311159844985873e-06),
    (0.8, 0.5, 0.5, 1.4467552781566313),
    (0.8, 0.5, 1.7, 12.233946312420336),
    (0.95, 1.0, -0.5, 0.6046140273421318),
    (0.95, 1.0, -3.0, 0.06753202221407191),
    (0.95, 1.0, -20.0, 0.0028432225780766324),
    (0.95, 1.0, -150.0, 0.00034668685992166216),
    (0.95, 1.0, -1000.0, 5.145569927857013e-05),
    (0.95, 1.0, -100000.0, 5.136178931217049e-07),
    (0.95, 1.0, 0.5, 1.676089092813558),
    (0.95, 1.0, 1.7, 6.030158808968233),
    (0.95, 0.95, -0.5, 0.5692832466975382),
    (0.95, 0.95, -3.0, 0.04667347088257424),
    (0.95, 0.95, -20.0, 0.00015040174846745852),
    (0.95, 0.95, -150.0, 2.2232953017201476e-06),
    (0.95, 0.95, -1000.0, 4.8973269370596126e-08),
    (0.95, 0.95, -100000.0, 4.879459861673715e-12),
    (0.95, 0.95, 0.5, 1.6631635260996616),
    (0.95, 0.95, 1.7, 6.222749617680348),
    (0.95, 1.95, -0.5, 0.7907719453157366),
    (0.95, 1.95, -3.0, 0.31082265926197605),
    (0.95, 1.95, -20.0, 0.04985783887109617),
    (0.95, 1.95, -150.0, 0.006664355420933856),
    (0.95, 1.95, -1000.0, 0.0009999485443007215),
    (0.95, 1.95, -100000.0, 9.999994863821068e-06),
    (0.95, 1.95, 0.5, 1.3521781856271156),
    (0.95, 1.95, 1.7, 2.958916946451902),
    (0.95, 2.9, -0.5, 0.45952100579502586),
    (0.95, 2.9, -3.0, 0.23656992965042448),
    (0.95, 2.9, -20.0, 0.04853373046710766),
    (0.95, 2.9, -150.0, 0.006759120618615437),
    (0.95, 2.9, -1000.0, 0.0010195324996689487),
    (0.95, 2.9, -100000.0, 1.0205224482183857e-05),
    (0.95, 2.9, 0.5, 0.6632914748277323),
    (0.95, 2.9, 1.7, 1.1402261754345016),
    (0.95, 0.5, -0.5, 0.16294187642891828),
    (0.95, 0.5, -3.0, -0.12251078448496047),
    (0.95, 0.5, -20.0, -0.014979889617059448),
    (0.95, 0.5, -150.0, -0.001873248101225691),
    (0.95, 0.5, -1000.0, -0.0002788207813895854),
    (0.95, 0.5, -100000.0, -2.7844769499125534e-06),
    (0.95, 0.5, 0.5, 1.3822604078658791),
    (0.95, 0.5, 1.7, 8.094491704245565),
]

# stiffness_column(8, s)[:4]
STIFFNESS_N8 = {
    0.3: [0.4188966392881386, -0.023847740483083524, -0.05582409725832478, -0.02484297358189142],
    0.5: [0.8825424006106067, -0.19143861467394382, -0.11678794191483143, -0.040136107622598886],
    0.8: [3.111362547409185, -1.2567598225745646, -0.20158085734039516, -0.043217479519339456],
}

GAMMA_1_3 = 0.8974706963062772  # mpmath.gamma(1.3)
C_1S_HALF = 0.3183098861837907  # 1/pi
C_1S_0_3 = 0.230096381681632104648  # mpmath, s = 0.3
