"""Chebyshev coefficient tables for the Riemann-Siegel correction terms.

C_k(p), k = 0..4, expanded in Chebyshev polynomials of u = 2p - 1 on [0, 1],
where p = frac(sqrt(t/2pi)).  Row k feeds the tau^{-(2k+1)/2} term of the
asymptotic correction.  Fitted by least squares against a multiprecision
Z(t) reference on a Chebyshev p-grid with main-sum lengths 8..46; the
recovered C_0 matches the analytic Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p)
to 1e-9, which validates the fit pipeline.  Frozen; regeneration script in
tools/gen_rs_coeffs.py.
"""
import numpy as np

RS_CHEB = np.array([
    [+6.42667286211200506e-01, +1.17022411218713432e-10, +2.71973000071867865e-01,
     -1.62461795235537905e-11, +1.07386056848871089e-02, -2.59880903626963015e-11,
     -1.37438143478509273e-03, +9.18617328817797785e-11, -1.24682369663042645e-04,
     +3.72637375520588686e-11, -5.76442198121123460e-07, +1.02154074851508928e-10,
     +2.72886122638926129e-07, -1.21938112217659980e-10, +8.21303127509203223e-09,
     -2.16653059407072341e-10, -2.77595975926054196e-10, -8.70101223405244843e-11,
     -3.49090239953985923e-11, +1.38492471612552902e-10, +1.30838320690499301e-10,
     +1.56540657115548441e-11, -1.09423466782772781e-10, +5.66089587159835613e-11,
     +2.27714208697512614e-10, +8.53693843096170554e-11, -1.13948331587015899e-10,
     +6.54862921759901619e-11, -1.07927218271664265e-10],
    [+1.97567938251116036e-09, +1.06979037910039237e-02, -4.04807886486833617e-09,
     +1.71706529566240974e-02, +8.70204123080975375e-09, +2.79321214729211318e-03,
     -6.36904295233270668e-09, -3.63812937918999566e-05, +1.07557071713288262e-08,
     -2.71099076052069435e-05, -7.10258686554239925e-10, -1.05576035252797266e-06,
     -5.86509347057970183e-09, +6.70334568536484617e-08, -8.44644941705043340e-09,
     +1.90193526558869457e-08, +6.29074237393200815e-09, +5.79441552058855827e-09,
     +7.25694118583760554e-10, -1.03859308465613455e-08, -9.22473207481535684e-09,
     -1.74764727167859193e-09, +7.35841011965934070e-09, -3.59561095509240018e-09,
     -1.46268327549108287e-08, -7.32052274388302079e-09, +6.60278624731698028e-09,
     -4.25821627498799663e-09, +6.50756100431652718e-09],
    [+3.14607119234828429e-03, +3.18842718104452213e-07, -2.30870590826999381e-03,
     -5.96144082654758137e-08, +5.75025521649173514e-05, -1.12368810906215537e-08,
     +3.52536086261181711e-04, +1.22843510229250295e-07, +2.49964085203868735e-05,
     -2.10904927984962680e-09, -3.43171720036572154e-06, +1.78240843078602964e-07,
     -2.10718441154636803e-07, -1.83267011239767138e-07, +1.83401608614906848e-07,
     -3.37264056315704995e-07, -1.69386379833767515e-07, -1.35130610756301513e-07,
     -6.65824281406973467e-09, +2.55498899025591891e-07, +2.20248302765273104e-07,
     +5.09474883602074142e-08, -1.65023934884183661e-07, +8.05106838738312039e-08,
     +3.27114389895136539e-07, +1.87496434179785906e-07, -1.36444901828874745e-07,
     +9.22557588171150401e-08, -1.39240386139345409e-07],
    [+3.87912968882682874e-07, +6.65248673945918506e-05, -6.04403323448964278e-07,
     +2.33250342583794399e-04, +1.81504112305369890e-06, -1.29262017112564211e-04,
     -1.41030472300281379e-06, +1.69295591884903798e-05, +2.35718893613709075e-06,
     +6.71909020179268911e-06, -8.52850123423765567e-08, -1.86768212962961314e-06,
     -1.40436927152848680e-06, +1.59963120613208761e-06, -1.56810346578457532e-06,
     +3.18067499927143673e-06, +1.80772330011714794e-06, +1.30600382674337409e-06,
     -5.87695315542486411e-09, -2.54024038871229861e-06, -2.16451944665009886e-06,
     -5.54043679246043227e-07, +1.51218504185903853e-06, -7.58106631120976116e-07,
     -3.05126267856928221e-06, -1.88557768234187090e-06, +1.18270962661706467e-06,
     -8.14313180696753565e-07, +1.24809057272114846e-06],
    [+1.66683426578853909e-04, +3.29961232865275329e-05, -2.25884358606259414e-04,
     -6.22573252795583803e-06, +5.89104667173166190e-05, -3.91534302161723866e-09,
     -3.76328750596886500e-06, +4.08413862948183707e-06, -1.03822199731702026e-05,
     -1.19163762239200372e-06, +1.10950192825052411e-06, +6.02195952420012533e-06,
     +4.87664056053708728e-06, -5.33797235757144227e-06, +4.78508215213637970e-06,
     -1.05901299444648600e-05, -6.57879889444751803e-06, -4.46697167988367394e-06,
     +2.13393610499029434e-07, +8.80623207788470459e-06, +7.49950926669526613e-06,
     +2.03229521113260904e-06, -4.86722997982659253e-06, +2.55187634047011495e-06,
     +1.01180663036988378e-05, +6.54585708805396157e-06, -3.63511849266968785e-06,
     +2.51660505121838540e-06, -3.97736592353539383e-06],
])
